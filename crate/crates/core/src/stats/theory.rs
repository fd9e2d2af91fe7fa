//! Closed-form distribution of the number of generator words consumed.

use crate::error::{Error, Result};
use crate::hashers::{Algorithm, BucketCount};

/// `2^(floor(log2(n - 1)) + 1) / n`, in `[1, 2)` for `n >= 2`.
pub fn rho(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("rho needs n >= 2, got {n}")));
    }
    let m0 = 32 - (n - 1).leading_zeros();
    Ok((1u64 << m0) as f64 / f64::from(n))
}

/// `(H_n, H_n - H_n^(2))`: each index `i < n` is active with probability
/// `1 / (i + 1)` and costs one word.
pub fn theory_jump_hash(n: u32) -> (f64, f64) {
    // smallest terms first
    let (h1, h2) = (1..=n).rev().fold((0.0, 0.0), |(h1, h2), i| {
        let r = 1.0 / f64::from(i);
        (h1 + r, h2 + r * r)
    });
    (h1, h1 - h2)
}

/// Two initial words plus `Bernoulli(1 - 1/rho) * Geometric(1/rho)`.
pub fn theory_jbh(n: u32) -> (f64, f64) {
    match rho(n) {
        Ok(r) => (1.0 + r, (r - 1.0) * r),
        Err(_) => (0.0, 0.0),
    }
}

/// One initial word plus `Bernoulli(1 - 1/rho) * Geometric(p)` where each
/// word carries two candidates, `p = (2 rho - 1) / rho^2`.
pub fn theory_jbh_packed(n: u32) -> (f64, f64) {
    match rho(n) {
        Ok(r) => {
            let d = 2.0 * r - 1.0;
            (
                1.0 + (r - 1.0) * r / d,
                r * (r - 1.0) * (r * r - r + 1.0) / (d * d),
            )
        }
        Err(_) => (0.0, 0.0),
    }
}

/// Mean and variance of the words consumed for one bucket count.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConsumptionTheory {
    pub n: BucketCount,
    /// Undefined for `n = 1`.
    pub rho: Option<f64>,
    pub mean: f64,
    pub variance: f64,
}

impl ConsumptionTheory {
    /// Closed forms where one is known; `NaN` moments otherwise.
    pub fn for_algorithm(algo: Algorithm, n: BucketCount) -> Self {
        let (mean, variance) = match algo {
            Algorithm::Modulo => (0.0, 0.0),
            Algorithm::Random => (1.0, 0.0),
            Algorithm::Icws => (3.0, 0.0),
            Algorithm::JumpHash => theory_jump_hash(n.get()),
            Algorithm::JumpBackHash => theory_jbh(n.get()),
            Algorithm::JumpBackHashPacked => theory_jbh_packed(n.get()),
            Algorithm::JumpingBackwards
            | Algorithm::JumpingBackwardsImprovedOpt1
            | Algorithm::JumpingBackwardsImprovedOpt2 => (f64::NAN, f64::NAN),
        };
        Self {
            n,
            rho: rho(n.get()).ok(),
            mean,
            variance,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn rho_values() {
        assert!(rho(1).is_err());
        assert!(rho(0).is_err());
        assert_eq!(rho(2).unwrap(), 1.0);
        assert_eq!(rho(4).unwrap(), 1.0);
        assert!(close(rho(3).unwrap(), 4.0 / 3.0));
        assert!(close(rho(5).unwrap(), 1.6));
        for i in 1..31 {
            let n = (1u32 << i) + 1;
            let expected = 2.0 * f64::from(1u32 << i) / f64::from(n);
            assert!(close(rho(n).unwrap(), expected));
            assert!(rho(n).unwrap() < 2.0);
        }
        assert!(rho((1 << 30) + 1).unwrap() > 1.999_999);
        assert!(rho(i32::MAX as u32).unwrap() < 1.000_001);
    }

    #[test]
    fn jump_hash_partial_sums() {
        assert_eq!(theory_jump_hash(1), (1.0, 0.0));
        let (mean, var) = theory_jump_hash(4);
        assert!(close(mean, 25.0 / 12.0));
        assert!(close(var, 95.0 / 144.0));
        let (mean, var) = theory_jump_hash(1_000_000);
        assert!(mean <= 1.0 + (1e6f64).ln());
        assert!(var <= (1e6f64).ln());
    }

    #[test]
    fn jbh_substitutions() {
        assert_eq!(theory_jbh(1), (0.0, 0.0));
        assert_eq!(theory_jbh(1024), (2.0, 0.0));
        let (m, v) = theory_jbh(3);
        assert!(close(m, 7.0 / 3.0) && close(v, 4.0 / 9.0));
        let (m, v) = theory_jbh(5);
        assert!(close(m, 2.6) && close(v, 0.96));
    }

    #[test]
    fn packed_substitutions() {
        assert_eq!(theory_jbh_packed(1), (0.0, 0.0));
        assert_eq!(theory_jbh_packed(64), (1.0, 0.0));
        let (m, v) = theory_jbh_packed(5);
        assert!(close(m, 1.0 + 0.96 / 2.2) && close(v, 0.96 * 1.96 / 4.84));
        let (m, v) = theory_jbh_packed(3);
        assert!(close(m, 19.0 / 15.0) && close(v, 52.0 / 225.0));
    }
}
