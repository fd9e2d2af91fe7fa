/// Receives intermediate values while an algorithm runs.
///
/// All methods default to no-ops; `()` is the untraced observer and
/// compiles away entirely.
pub trait Tracer {
    #[inline(always)]
    fn words(&mut self, _x0: u32, _x1: u32, _u_bits: u32) {}

    /// Entered interval `m` holding candidate `y`, picked with `parity`.
    #[inline(always)]
    fn interval(&mut self, _m: u32, _parity: u32, _y: u32) {}

    #[inline(always)]
    fn z(&mut self, _z: u32) {}

    #[inline(always)]
    fn active_index(&mut self, _index: u64) {}

    #[inline(always)]
    fn unit(&mut self, _u: f64) {}

    #[inline(always)]
    fn gamma(&mut self, _g: f64) {}
}

impl Tracer for () {}

/// Per-call record of the intermediate values of one evaluation.
///
/// `m_list`, `parities` and `candidates` are aligned: entry `i` describes
/// the `i`-th interval visited by the interval-walking algorithms.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EvaluationTrace {
    pub x0: Option<u32>,
    pub x1: Option<u32>,
    pub u_bits: Option<u32>,
    pub m_list: Vec<u32>,
    pub parities: Vec<u32>,
    pub candidates: Vec<u32>,
    pub z_list: Vec<u32>,
    /// Active indices in generation order (ascending for JumpHash,
    /// descending for the backwards walk).
    pub active_indices: Vec<u64>,
    pub unit_uniform: Option<f64>,
    pub gamma: Option<f64>,
    pub invocations: u64,
}

impl EvaluationTrace {
    /// Checks the structural invariants of the recorded interval walk.
    pub fn is_consistent(&self) -> bool {
        let decreasing = self.m_list.windows(2).all(|w| w[0] > w[1]);
        let in_interval = self
            .m_list
            .iter()
            .zip(&self.candidates)
            .all(|(&m, &y)| (1u64 << m) <= u64::from(y) && u64::from(y) < (2u64 << m));
        decreasing && in_interval && self.m_list.len() == self.candidates.len()
    }
}

impl Tracer for EvaluationTrace {
    fn words(&mut self, x0: u32, x1: u32, u_bits: u32) {
        self.x0 = Some(x0);
        self.x1 = Some(x1);
        self.u_bits = Some(u_bits);
    }

    fn interval(&mut self, m: u32, parity: u32, y: u32) {
        self.m_list.push(m);
        self.parities.push(parity);
        self.candidates.push(y);
    }

    fn z(&mut self, z: u32) {
        self.z_list.push(z);
    }

    fn active_index(&mut self, index: u64) {
        self.active_indices.push(index);
    }

    fn unit(&mut self, u: f64) {
        self.unit_uniform = Some(u);
    }

    fn gamma(&mut self, g: f64) {
        self.gamma = Some(g);
    }
}
