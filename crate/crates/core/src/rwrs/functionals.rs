use rustc_hash::FxHashMap;

use super::{LocalTimeMap, ZPath};
use crate::error::{invalid, Result};

/// `V_n = Σ_y N_n(y)²`.
pub fn self_intersections(lt: &LocalTimeMap) -> u64 {
    lt.iter().map(|(_, c)| c * c).sum()
}

/// `V_n(β) = Σ_y N_n(y)^β`.
pub fn v_beta(lt: &LocalTimeMap, beta: f64) -> f64 {
    lt.iter().map(|(_, c)| (c as f64).powf(beta)).sum()
}

/// `#{Z_0, …, Z_n}`.
pub fn range_z(z: &ZPath) -> usize {
    let mut seen: rustc_hash::FxHashSet<i64> = Default::default();
    seen.extend(z.values.iter().copied());
    seen.len()
}

/// `max Z - min Z + 1`; equals the range when the scenery takes values in
/// {-1, 0, 1}.
pub fn z_spread(z: &ZPath) -> i64 {
    let max = z.values.iter().max().copied().unwrap_or(0);
    let min = z.values.iter().min().copied().unwrap_or(0);
    max - min + 1
}

/// `Σ_x 𝒩_n(x)²` with `𝒩_n(x) = #{1 ≤ k ≤ n : Z_k = x}`.
pub fn z_self_intersections(z: &ZPath) -> u64 {
    let mut levels: FxHashMap<i64, u64> = FxHashMap::default();
    for &v in &z.values[1..] {
        *levels.entry(v).or_insert(0) += 1;
    }
    levels.values().map(|c| c * c).sum()
}

/// `1 - 1/α + 1/(αβ)`.
pub fn exponent_delta(alpha: f64, beta: f64) -> f64 {
    1.0 - 1.0 / alpha + 1.0 / (alpha * beta)
}

/// Size of `Z_n`:
/// `n^δ` for α ∈ (1, 2], `n^{1/β} (log n)^{1 - 1/β}` for α = 1,
/// `n^{1/β}` for α ∈ (0, 1).
pub fn normalizer_a(alpha: f64, beta: f64, n: u64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 2.0 && beta > 0.0 && beta <= 2.0) {
        return Err(invalid(format!("indices ({alpha}, {beta}) outside (0, 2]")));
    }
    let nf = n as f64;
    if alpha > 1.0 {
        Ok(nf.powf(exponent_delta(alpha, beta)))
    } else if alpha == 1.0 {
        if n < 2 {
            return Err(invalid("the alpha = 1 normalizer needs n >= 2"));
        }
        Ok(nf.powf(1.0 / beta) * nf.ln().powf(1.0 - 1.0 / beta))
    } else {
        Ok(nf.powf(1.0 / beta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rwrs::{rwrs_trial, RwrsModel};
    use crate::stable_core::{derive_stream, LatticeLaw};

    fn zpath(v: &[i64]) -> ZPath {
        ZPath { values: v.to_vec() }
    }

    #[test]
    fn self_intersection_extremes() {
        let n = 50u64;
        let stuck = LocalTimeMap::from_positions(std::iter::repeat(3).take(n as usize));
        assert_eq!(self_intersections(&stuck), n * n);
        let spread = LocalTimeMap::from_positions(0..n as i64);
        assert_eq!(self_intersections(&spread), n);
        assert_eq!(v_beta(&spread, 0.7), n as f64);
    }

    #[test]
    fn self_intersections_match_pair_count() {
        let model = RwrsModel::simple_rademacher();
        for t in 0..10 {
            let path = rwrs_trial(&model, 400, derive_stream(2, t));
            let s = &path.walk[1..];
            let pairs = s
                .iter()
                .flat_map(|a| s.iter().map(move |b| (a == b) as u64))
                .sum::<u64>();
            assert_eq!(self_intersections(&path.local_time), pairs);
            assert_eq!(v_beta(&path.local_time, 2.0), pairs as f64);
            assert_eq!(v_beta(&path.local_time, 1.0), 400.0);
        }
    }

    #[test]
    fn z_functionals() {
        assert_eq!(range_z(&zpath(&[0, 0, 0])), 1);
        assert_eq!(z_self_intersections(&zpath(&[0, 1, 2, 3])), 3);
        assert_eq!(z_self_intersections(&zpath(&[0, 0, 0, 0])), 9);
        assert_eq!(z_spread(&zpath(&[0, 1, -2, 0])), 4);
    }

    #[test]
    fn ternary_range_is_spread() {
        let model = RwrsModel::new(LatticeLaw::SimpleSymmetric, LatticeLaw::Ternary { p0: 0.3 }).unwrap();
        for t in 0..100 {
            let path = rwrs_trial(&model, 2000, derive_stream(6, t));
            assert_eq!(range_z(&path.z) as i64, z_spread(&path.z));
            let n = 2000u64;
            assert!(n * n <= range_z(&path.z) as u64 * z_self_intersections(&path.z));
        }
    }

    #[test]
    fn normalizer_cases() {
        assert!((normalizer_a(2.0, 2.0, 16).unwrap() - 8.0).abs() < 1e-12);
        let n = 7u64; // nearest integer to e^2
        let expected = (7.0f64 * 7.0f64.ln()).sqrt();
        assert!((normalizer_a(1.0, 2.0, n).unwrap() - expected).abs() < 1e-12);
        assert!((normalizer_a(0.5, 2.0, 100).unwrap() - 10.0).abs() < 1e-12);
        assert!(normalizer_a(1.0, 2.0, 1).is_err());
        assert!(normalizer_a(2.5, 2.0, 10).is_err());
    }

    #[test]
    fn delta_values() {
        assert!((exponent_delta(2.0, 2.0) - 0.75).abs() < 1e-15);
        assert_eq!(exponent_delta(1.0, 1.0), 1.0);
        assert_eq!(exponent_delta(2.0, 1.0), 1.0);
    }
}
