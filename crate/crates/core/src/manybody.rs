//! Hard-core distinguishable particles: eigenfunctions are Slater determinants
//! restricted to one ordering sector `x_{P1} < … < x_{PN}` and continued by zero,
//! so every strictly increasing level set `n_1 < … < n_N` appears `N!` times.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::{ModelKind, OneBodyModel};

/// Strictly increasing one-body levels `n_1 < n_2 < … < n_N`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct LevelMultiIndex {
    levels: Vec<usize>,
}

impl LevelMultiIndex {
    pub fn new(levels: Vec<usize>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::ParameterDomain("multi-index must be non-empty".into()));
        }
        if levels.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::ParameterDomain(format!(
                "levels {levels:?} are not strictly increasing"
            )));
        }
        Ok(LevelMultiIndex { levels })
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }
}

impl std::fmt::Display for LevelMultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.levels.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ManyBodyLevel {
    pub energy: f64,
    pub degeneracy: u64,
    pub multi_indices: Vec<LevelMultiIndex>,
}

pub fn factorial(n: usize) -> Result<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k)).ok_or_else(|| {
        Error::ParameterDomain(format!("{n}! does not fit in 64 bits"))
    })
}

/// One-body energy used for `N` particles. On the free circle the level list is the
/// sorted set `(m - (N-1)/2)²`, `m ∈ ℤ`, from the shifted exponentials
/// `e^{imx} e^{-i(N-1)x/2}`; every other model uses `E_n`.
pub fn one_body_level(model: &OneBodyModel, n_particles: usize, level: usize) -> f64 {
    match model.kind() {
        ModelKind::CircleFree { .. } => {
            let half = (level / 2) as f64;
            if n_particles % 2 == 1 {
                // 0, 1, 1, 4, 4, …
                let m = level.div_ceil(2) as f64;
                m * m
            } else {
                // 1/4, 1/4, 9/4, 9/4, …
                (half + 0.5) * (half + 0.5)
            }
        }
        _ => model.energy(level),
    }
}

fn check_levels(model: &OneBodyModel, levels: &[usize]) -> Result<()> {
    if let (Some(max), Some(&top)) = (model.n_max(), levels.last()) {
        if top > max {
            return Err(Error::OutOfRange { index: top, max });
        }
    }
    Ok(())
}

/// `Σ_j E(n_j)`.
pub fn manybody_energy(model: &OneBodyModel, idx: &LevelMultiIndex) -> Result<f64> {
    check_levels(model, idx.levels())?;
    Ok(idx
        .levels()
        .iter()
        .map(|&n| one_body_level(model, idx.len(), n))
        .sum())
}

/// All many-body levels with energy `≤ e_cut`, ascending, with `N!`-fold sector degeneracy.
pub fn enumerate_spectrum(model: &OneBodyModel, n: usize, e_cut: f64) -> Result<Vec<ManyBodyLevel>> {
    if n == 0 {
        return Err(Error::ParameterDomain("N must be at least 1".into()));
    }
    if !e_cut.is_finite() {
        return Err(Error::ParameterDomain(format!(
            "energy cutoff must be finite (got {e_cut}); the enumeration would be unbounded"
        )));
    }
    let sectors = factorial(n)?;
    let available = model.n_max().map(|m| m + 1);
    if let Some(avail) = available {
        if n > avail {
            return Ok(Vec::new());
        }
    }
    let tol = 1e-9 * e_cut.abs().max(1.0);
    let level = |l: usize| one_body_level(model, n, l);
    // minimal energy of `r` particles starting at level `l`
    let tail_min = |l: usize, r: usize| (l..l + r).map(level).sum::<f64>();

    let mut found: Vec<(f64, Vec<usize>)> = Vec::new();
    let mut stack: Vec<usize> = Vec::with_capacity(n);
    fn walk(
        stack: &mut Vec<usize>,
        partial: f64,
        n: usize,
        e_cut: f64,
        tol: f64,
        available: Option<usize>,
        level: &dyn Fn(usize) -> f64,
        tail_min: &dyn Fn(usize, usize) -> f64,
        found: &mut Vec<(f64, Vec<usize>)>,
    ) -> Result<()> {
        if stack.len() == n {
            found.push((partial, stack.clone()));
            return Ok(());
        }
        let remaining = n - stack.len();
        let mut l = stack.last().map_or(0, |&v| v + 1);
        loop {
            if let Some(avail) = available {
                if l + remaining > avail {
                    break;
                }
            }
            if partial + tail_min(l, remaining) > e_cut + tol {
                break;
            }
            if level(l + 1) < level(l) {
                return Err(Error::ParameterDomain(
                    "one-body energies must be nondecreasing in the level index".into(),
                ));
            }
            stack.push(l);
            walk(stack, partial + level(l), n, e_cut, tol, available, level, tail_min, found)?;
            stack.pop();
            l += 1;
        }
        Ok(())
    }
    walk(&mut stack, 0.0, n, e_cut, tol, available, &level, &tail_min, &mut found)?;

    found.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    let mut out: Vec<ManyBodyLevel> = Vec::new();
    for (energy, levels) in found {
        let idx = LevelMultiIndex { levels };
        match out.last_mut() {
            Some(last) if (energy - last.energy).abs() <= tol => {
                last.multi_indices.push(idx);
                last.degeneracy += sectors;
            }
            _ => out.push(ManyBodyLevel {
                energy,
                degeneracy: sectors,
                multi_indices: vec![idx],
            }),
        }
    }
    Ok(out)
}

/// `Σ_{n<N} E(n)`, the ground energy of `N` hard-core particles.
pub fn fermion_ground_energy(model: &OneBodyModel, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::ParameterDomain("N must be at least 1".into()));
    }
    if let Some(max) = model.n_max() {
        if n > max + 1 {
            return Err(Error::InsufficientBoundStates {
                requested: n,
                available: max + 1,
            });
        }
    }
    Ok((0..n).map(|l| one_body_level(model, n, l)).sum())
}

/// Closed forms of the fermion ground energy where known:
/// harmonic `N²`, Pöschl–Teller `-(N/6)(2N-1)(N-1) + γN(N-1) - Nγ²`,
/// free circle `N(N²-1)/12`.
pub fn fermion_ground_closed_form(model: &OneBodyModel, n: usize) -> Option<f64> {
    let nf = n as f64;
    match model.kind() {
        ModelKind::Harmonic => Some(nf * nf),
        ModelKind::PoschlTeller { gamma } => {
            let cubic = (n * (2 * n).saturating_sub(1) * n.saturating_sub(1) / 6) as f64;
            Some(-cubic + gamma * nf * (nf - 1.0) - nf * gamma * gamma)
        }
        ModelKind::CircleFree { .. } => Some(nf * (nf * nf - 1.0) / 12.0),
        _ => None,
    }
}

/// Determinant of `ψ_{j-1}(x_k)` and the product form `e^{-Σw} Π_{j<k}(η(x_j) - η(x_k))`,
/// the latter signed so that `det / product` is a positive constant.
pub fn slater_and_product(model: &OneBodyModel, n: usize, x: &[f64]) -> Result<(f64, f64)> {
    if n == 0 || x.len() != n {
        return Err(Error::ParameterDomain(format!(
            "expected {n} coordinates, got {}",
            x.len()
        )));
    }
    if let Some(max) = model.n_max() {
        if n > max + 1 {
            return Err(Error::InsufficientBoundStates {
                requested: n,
                available: max + 1,
            });
        }
    }
    for (j, &xj) in x.iter().enumerate() {
        if !model.is_interior(xj) {
            return Err(Error::OutsideDomain(xj));
        }
        if x[..j].contains(&xj) {
            return Err(Error::DegenerateConfiguration(format!(
                "coordinate {xj} appears twice"
            )));
        }
    }
    let mut a = vec![vec![0.0; n]; n];
    for (j, row) in a.iter_mut().enumerate() {
        for (k, &xk) in x.iter().enumerate() {
            row[k] = model.eigenfunction(j, xk)?;
        }
    }
    let det = determinant(a);

    let mut log_w = 0.0;
    let mut etas = Vec::with_capacity(n);
    for &xj in x {
        log_w += model.weight(xj)?.value;
        etas.push(model.eta(xj)?.value);
    }
    let mut prod = (-log_w).exp();
    for j in 0..n {
        for k in j + 1..n {
            prod *= etas[j] - etas[k];
        }
    }
    let src = model.poly_source()?;
    let lead: f64 = (0..n).map(|j| src.leading_coefficient(j)).product();
    let pair_sign = if (n * (n - 1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    // det = Π lead · e^{-Σw} Π_{j<k}(η_k - η_j)
    let sign = (lead * pair_sign).signum();
    Ok((det, sign * prod))
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))
            .unwrap();
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energies() {
        let h = OneBodyModel::harmonic();
        let idx = LevelMultiIndex::new(vec![0, 1, 2]).unwrap();
        assert_eq!(manybody_energy(&h, &idx).unwrap(), 9.0);
        assert_eq!(manybody_energy(&h, &LevelMultiIndex::new(vec![0]).unwrap()).unwrap(), 1.0);
        let pt = OneBodyModel::poschl_teller(4.0).unwrap();
        assert_eq!(manybody_energy(&pt, &LevelMultiIndex::new(vec![0, 1]).unwrap()).unwrap(), -25.0);
        assert!(matches!(
            manybody_energy(&pt, &LevelMultiIndex::new(vec![0, 4]).unwrap()),
            Err(Error::OutOfRange { .. })
        ));
        assert!(LevelMultiIndex::new(vec![1, 1]).is_err());
    }

    #[test]
    fn two_particle_enumeration() {
        let h = OneBodyModel::harmonic();
        let levels = enumerate_spectrum(&h, 2, 8.0).unwrap();
        let summary: Vec<(f64, u64, usize)> = levels
            .iter()
            .map(|l| (l.energy, l.degeneracy, l.multi_indices.len()))
            .collect();
        assert_eq!(summary, vec![(4.0, 2, 1), (6.0, 2, 1), (8.0, 4, 2)]);
        let one = enumerate_spectrum(&h, 1, 5.0).unwrap();
        assert_eq!(one.iter().map(|l| (l.energy, l.degeneracy)).collect::<Vec<_>>(), vec![(1.0, 1), (3.0, 1), (5.0, 1)]);
        assert!(enumerate_spectrum(&h, 2, f64::INFINITY).is_err());
    }

    #[test]
    fn fermion_grounds() {
        let h = OneBodyModel::harmonic();
        assert_eq!(fermion_ground_energy(&h, 4).unwrap(), 16.0);
        let pt = OneBodyModel::poschl_teller(4.0).unwrap();
        assert_eq!(fermion_ground_energy(&pt, 2).unwrap(), -25.0);
        assert_eq!(fermion_ground_closed_form(&pt, 2).unwrap(), -25.0);
        assert!(matches!(
            fermion_ground_energy(&pt, 5),
            Err(Error::InsufficientBoundStates { .. })
        ));
        let c = OneBodyModel::circle_free(1.0).unwrap();
        assert_eq!(fermion_ground_energy(&c, 3).unwrap(), 2.0);
        assert_eq!(fermion_ground_energy(&c, 2).unwrap(), 0.5);
    }

    #[test]
    fn vandermonde_ratio_constant() {
        let h = OneBodyModel::harmonic();
        let (d1, p1) = slater_and_product(&h, 2, &[0.0, 1.0]).unwrap();
        let (d2, p2) = slater_and_product(&h, 2, &[-1.0, 2.0]).unwrap();
        assert!(d1 / p1 > 0.0);
        assert!((d1 / p1 - d2 / p2).abs() < 1e-10 * (d1 / p1).abs());
        assert!(matches!(
            slater_and_product(&h, 2, &[0.5, 0.5]),
            Err(Error::DegenerateConfiguration(_))
        ));
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(vec![vec![0.0, 1.0], vec![1.0, 0.0]]), -1.0);
        assert!((determinant(vec![vec![2.0, 1.0], vec![1.0, 3.0]]) - 5.0).abs() < 1e-15);
    }
}
