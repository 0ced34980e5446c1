//! Clebsch-Gordan coupling of two spins into total-`J` blocks.

use std::sync::OnceLock;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{check_dense_dim, Operator, C64};
use crate::spin::SpinQuantumNumber;

/// `|j1 - j2|, ..., j1 + j2` in increasing order.
pub fn total_j_values(j1: SpinQuantumNumber, j2: SpinQuantumNumber) -> Vec<SpinQuantumNumber> {
    let (a, b) = (j1.twice(), j2.twice());
    let lo = a.abs_diff(b);
    (lo..=a + b).step_by(2).map(SpinQuantumNumber::from_twice).collect()
}

fn triangle(j1: SpinQuantumNumber, j2: SpinQuantumNumber, j: SpinQuantumNumber) -> bool {
    let (a, b, c) = (j1.twice(), j2.twice(), j.twice());
    c >= a.abs_diff(b) && c <= a + b && (a + b + c) % 2 == 0
}

const LN_FACT_TABLE: usize = 8192;

fn ln_factorial(n: u32) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(LN_FACT_TABLE);
        let mut acc = 0.0f64;
        t.push(0.0);
        for k in 1..LN_FACT_TABLE {
            acc += (k as f64).ln();
            t.push(acc);
        }
        t
    });
    if (n as usize) < LN_FACT_TABLE {
        return table[n as usize];
    }
    // Stirling series; n >= 8192 so three terms are past double precision
    let x = n as f64 + 1.0;
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + 1.0 / (12.0 * x)
        - 1.0 / (360.0 * x.powi(3))
        + 1.0 / (1260.0 * x.powi(5))
}

/// Integer `(twice_a ± twice_b) / 2`, asserting evenness.
fn half(twice: i64) -> i64 {
    debug_assert!(twice % 2 == 0);
    twice / 2
}

/// Clebsch-Gordan coefficient `<j1 m1; j2 m2 | J M>` in the Condon-Shortley
/// convention. Magnetic numbers are passed doubled.
pub fn clebsch_gordan(
    j1: SpinQuantumNumber,
    j2: SpinQuantumNumber,
    twice_m1: i32,
    twice_m2: i32,
    j: SpinQuantumNumber,
    twice_m: i32,
) -> Result<f64> {
    for (name, spin, tm) in [("m1", j1, twice_m1), ("m2", j2, twice_m2), ("M", j, twice_m)] {
        if spin.index_of(tm).is_none() {
            return Err(Error::Domain(format!("{name} = {tm}/2 is not on the ladder of j = {spin}")));
        }
    }
    if twice_m != twice_m1 + twice_m2 || !triangle(j1, j2, j) {
        return Ok(0.0);
    }
    Ok(racah(j1.twice() as i64, j2.twice() as i64, twice_m1 as i64, twice_m2 as i64, j.twice() as i64, twice_m as i64))
}

/// Racah's closed-form sum, evaluated in log space with explicit signs.
fn racah(a: i64, b: i64, ma: i64, mb: i64, c: i64, mc: i64) -> f64 {
    let lf = |twice: i64| ln_factorial(half(twice) as u32);
    let ln_pref = 0.5
        * (((c + 1) as f64).ln() + lf(c + a - b) + lf(c - a + b) + lf(a + b - c) - lf(a + b + c + 2)
            + lf(c + mc)
            + lf(c - mc)
            + lf(a - ma)
            + lf(a + ma)
            + lf(b - mb)
            + lf(b + mb));
    let n1 = half(a + b - c);
    let n2 = half(a - ma);
    let n3 = half(b + mb);
    let n4 = half(c - b + ma);
    let n5 = half(c - a - mb);
    let k_min = 0.max(-n4).max(-n5);
    let k_max = n1.min(n2).min(n3);
    let mut sum = 0.0;
    for k in k_min..=k_max {
        let ln_den = ln_factorial(k as u32)
            + ln_factorial((n1 - k) as u32)
            + ln_factorial((n2 - k) as u32)
            + ln_factorial((n3 - k) as u32)
            + ln_factorial((n4 + k) as u32)
            + ln_factorial((n5 + k) as u32);
        let term = (ln_pref - ln_den).exp();
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// One total-`J` block: an isometry from the `(2J+1)`-dimensional irrep
/// (columns ordered by descending `M`) into the product space.
#[derive(Clone, Debug)]
pub struct CouplingBlock {
    pub j: SpinQuantumNumber,
    pub isometry: DMatrix<f64>,
}

/// The product space `H_{j1} ⊗ H_{j2}` split into its total-`J` irreps.
///
/// Product basis index is `k1 * (2j2+1) + k2`, matching `kronecker`.
#[derive(Clone, Debug)]
pub struct CouplingDecomposition {
    pub j1: SpinQuantumNumber,
    pub j2: SpinQuantumNumber,
    pub blocks: Vec<CouplingBlock>,
}

impl CouplingDecomposition {
    pub fn new(j1: SpinQuantumNumber, j2: SpinQuantumNumber) -> Result<Self> {
        let dim = j1.dim() * j2.dim();
        check_dense_dim(dim)?;
        let d2 = j2.dim();
        let blocks = total_j_values(j1, j2)
            .into_iter()
            .map(|j| {
                let mut iso = DMatrix::<f64>::zeros(dim, j.dim());
                for (col, tm) in j.twice_m_values().enumerate() {
                    for (k1, tm1) in j1.twice_m_values().enumerate() {
                        let tm2 = tm - tm1;
                        if let Some(k2) = j2.index_of(tm2) {
                            iso[(k1 * d2 + k2, col)] =
                                racah(j1.twice() as i64, j2.twice() as i64, tm1 as i64, tm2 as i64, j.twice() as i64, tm as i64);
                        }
                    }
                }
                CouplingBlock { j, isometry: iso }
            })
            .collect();
        Ok(Self { j1, j2, blocks })
    }

    pub fn dim(&self) -> usize {
        self.j1.dim() * self.j2.dim()
    }

    pub fn total_js(&self) -> Vec<SpinQuantumNumber> {
        self.blocks.iter().map(|b| b.j).collect()
    }

    pub fn block(&self, j: SpinQuantumNumber) -> Result<&CouplingBlock> {
        self.blocks
            .iter()
            .find(|b| b.j == j)
            .ok_or_else(|| Error::Domain(format!("J = {j} is not in {} ⊗ {}", self.j1, self.j2)))
    }

    pub fn projector(&self, j: SpinQuantumNumber) -> Result<Projector> {
        let b = self.block(j)?;
        let p = &b.isometry * b.isometry.transpose();
        Ok(Projector { j, matrix: p.map(|x| C64::new(x, 0.0)) })
    }

    pub fn projectors(&self) -> Vec<Projector> {
        self.blocks.iter().map(|b| self.projector(b.j).expect("own block")).collect()
    }

    /// `Tr(Π_J ρ)` for every block, in block order.
    pub fn block_weights(&self, rho: &Operator) -> Vec<f64> {
        assert_eq!(rho.nrows(), self.dim());
        self.blocks
            .iter()
            .map(|b| {
                let v = b.isometry.map(|x| C64::new(x, 0.0));
                let rv = rho * &v;
                let mut acc = 0.0;
                for col in 0..v.ncols() {
                    acc += v.column(col).dotc(&rv.column(col)).re;
                }
                acc
            })
            .collect()
    }
}

pub fn decomposition(j1: SpinQuantumNumber, j2: SpinQuantumNumber) -> Result<CouplingDecomposition> {
    CouplingDecomposition::new(j1, j2)
}

/// Orthogonal projector onto the total-`J` subspace.
#[derive(Clone, Debug)]
pub struct Projector {
    pub j: SpinQuantumNumber,
    pub matrix: Operator,
}

pub fn projector(j1: SpinQuantumNumber, j2: SpinQuantumNumber, j: SpinQuantumNumber) -> Result<Projector> {
    if !triangle(j1, j2, j) {
        return Err(Error::Domain(format!("J = {j} is not in {j1} ⊗ {j2}")));
    }
    decomposition(j1, j2)?.projector(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, max_abs, max_abs_diff};

    fn s(tj: u32) -> SpinQuantumNumber {
        SpinQuantumNumber::from_twice(tj)
    }

    #[test]
    fn total_j_lists() {
        assert_eq!(total_j_values(s(1), s(1)), vec![s(0), s(2)]);
        for tj in 1..10 {
            assert_eq!(total_j_values(s(1), s(tj)), vec![s(tj - 1), s(tj + 1)]);
        }
        assert_eq!(total_j_values(s(0), s(5)), vec![s(5)]);
    }

    #[test]
    fn singlet_coefficient_and_selection_rule() {
        let v = clebsch_gordan(s(1), s(1), 1, -1, s(0), 0).unwrap();
        assert!((v - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
        let w = clebsch_gordan(s(1), s(1), -1, 1, s(0), 0).unwrap();
        assert!((w + std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
        assert_eq!(clebsch_gordan(s(2), s(3), 2, 1, s(3), 1).unwrap(), 0.0);
        for (a, b) in [(1, 1), (4, 3), (7, 10), (20, 6)] {
            let top = clebsch_gordan(s(a), s(b), a as i32, b as i32, s(a + b), (a + b) as i32).unwrap();
            assert!((top - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn off_ladder_labels_are_domain_errors() {
        assert!(matches!(clebsch_gordan(s(1), s(1), 2, -1, s(0), 1), Err(Error::Domain(_))));
        assert!(matches!(clebsch_gordan(s(2), s(1), 0, 1, s(3), 2), Err(Error::Domain(_))));
    }

    #[test]
    fn known_spin_one_half_values() {
        // <1 0; 1/2 1/2 | 3/2 1/2> = sqrt(2/3), <1 1; 1/2 -1/2 | 1/2 1/2> = sqrt(2/3)
        let a = clebsch_gordan(s(2), s(1), 0, 1, s(3), 1).unwrap();
        assert!((a - (2.0f64 / 3.0).sqrt()).abs() < 1e-14);
        let b = clebsch_gordan(s(2), s(1), 2, -1, s(1), 1).unwrap();
        assert!((b - (2.0f64 / 3.0).sqrt()).abs() < 1e-14);
        let cc = clebsch_gordan(s(2), s(1), 0, 1, s(1), 1).unwrap();
        assert!((cc + (1.0f64 / 3.0).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn singlet_block_column() {
        let d = decomposition(s(1), s(1)).unwrap();
        let col = d.block(s(0)).unwrap().isometry.column(0).clone_owned();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [0.0, r, -r, 0.0];
        for (x, y) in col.iter().zip(expected) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn block_dimensions_sum() {
        let d = decomposition(s(1), s(2)).unwrap();
        let dims: Vec<usize> = d.blocks.iter().map(|b| b.isometry.ncols()).collect();
        assert_eq!(dims, vec![2, 4]);
    }

    #[test]
    fn projector_algebra() {
        let p = projector(s(1), s(1), s(0)).unwrap();
        assert!((p.matrix.trace().re - 1.0).abs() < 1e-12);

        let d = decomposition(s(2), s(3)).unwrap();
        let sum = d.projectors().into_iter().fold(Operator::zeros(12, 12), |acc, p| acc + p.matrix);
        assert!(max_abs_diff(&sum, &identity(12)) < 1e-12);

        let d = decomposition(s(1), s(4)).unwrap();
        let ps = d.projectors();
        assert!(max_abs(&(&ps[0].matrix * &ps[1].matrix)) < 1e-12);
    }

    #[test]
    fn out_of_range_j_rejected() {
        assert!(matches!(projector(s(1), s(1), s(4)), Err(Error::Domain(_))));
        assert!(matches!(projector(s(1), s(2), s(2)), Err(Error::Domain(_))));
    }

    #[test]
    fn capacity_cap() {
        assert!(matches!(decomposition(s(200), s(40)), Err(Error::Capacity { .. })));
    }

    #[test]
    fn stirling_tail_continuous() {
        let exact: f64 = (1..=9000u32).map(|k| (k as f64).ln()).sum();
        assert!((ln_factorial(9000) - exact).abs() / exact < 1e-13);
    }
}
