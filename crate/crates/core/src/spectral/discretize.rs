use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::models::{BoundaryCondition, OneBodyModel};

pub type Potential = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndCondition {
    Dirichlet,
    Neumann,
}

/// Grid points carrying unknowns, in matrix order.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub points: Vec<f64>,
    /// Lumped mass (dual cell length) of each unknown.
    pub masses: Vec<f64>,
    /// Nominal spacing `(b - a)/(m + 1)`; each segment uses the closest
    /// spacing that divides it evenly.
    pub spacing: f64,
    pub truncated_left: bool,
    pub truncated_right: bool,
}

/// Coupling `-(u(b) - u(a))²/c` between the two box ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerCoupling {
    pub coefficient: f64,
    /// Matrix indices of the unknowns at `a` and `b`.
    pub left: usize,
    pub right: usize,
}

#[derive(Clone)]
struct Layout {
    potential: Potential,
    a: f64,
    b: f64,
    m: usize,
    ends: (EndCondition, EndCondition),
    truncated: (bool, bool),
    /// Sorted interior breakpoints: `None` for a pinned node, `Some(g)` for a delta.
    breaks: Vec<(f64, Option<f64>)>,
    intervals: Vec<usize>,
    /// Inverse coupling constant `1/c` for circle-type ends.
    corner: Option<f64>,
}

/// Symmetric tridiagonal matrix for `-∂² + V` on a box.
#[derive(Clone)]
pub struct TridiagonalOperator {
    pub diagonal: Vec<f64>,
    pub offdiagonal: Vec<f64>,
    pub grid: Grid,
    pub pinned: Vec<f64>,
    pub corner: Option<CornerCoupling>,
    layout: Layout,
}

impl fmt::Debug for TridiagonalOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TridiagonalOperator")
            .field("dimension", &self.diagonal.len())
            .field("spacing", &self.grid.spacing)
            .field("pinned", &self.pinned)
            .field("corner", &self.corner)
            .finish()
    }
}

impl TridiagonalOperator {
    pub fn dimension(&self) -> usize {
        self.diagonal.len()
    }

    /// Same problem with every segment's spacing halved.
    pub fn refined(&self) -> Result<TridiagonalOperator> {
        let mut layout = self.layout.clone();
        layout.m = 2 * layout.m + 1;
        layout.intervals.iter_mut().for_each(|n| *n *= 2);
        assemble(layout)
    }

    /// Index ranges of the decoupled diagonal blocks (split at zero off-diagonals).
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for (i, &b) in self.offdiagonal.iter().enumerate() {
            if b == 0.0 {
                out.push(start..i + 1);
                start = i + 1;
            }
        }
        if start < self.dimension() {
            out.push(start..self.dimension());
        }
        out
    }

    /// The principal submatrix on `range` as a standalone matrix pair.
    pub fn block_matrix(&self, range: std::ops::Range<usize>) -> (Vec<f64>, Vec<f64>) {
        let d = self.diagonal[range.clone()].to_vec();
        let e = if range.len() > 1 {
            self.offdiagonal[range.start..range.end - 1].to_vec()
        } else {
            Vec::new()
        };
        (d, e)
    }
}

/// Discretize a catalogue model on `bx` with `m` nominal interior points.
/// `nodes` are pinned to zero; `deltas` add `g δ(x - z)`.
pub fn discretize(
    model: &OneBodyModel,
    bx: (f64, f64),
    m: usize,
    nodes: &[f64],
    deltas: &[(f64, f64)],
) -> Result<TridiagonalOperator> {
    let model_c = model.clone();
    let ends = match model.boundary() {
        BoundaryCondition::Neumann => (EndCondition::Neumann, EndCondition::Neumann),
        _ => (EndCondition::Dirichlet, EndCondition::Dirichlet),
    };
    let (da, db) = model.domain();
    if bx.0 < da || bx.1 > db {
        return Err(Error::Constraint(format!(
            "box ({}, {}) leaves the model domain ({da}, {db})",
            bx.0, bx.1
        )));
    }
    let truncated = (bx.0 > da, bx.1 < db);
    discretize_inner(
        Arc::new(move |x| model_c.potential(x)),
        bx,
        m,
        nodes,
        deltas,
        ends,
        truncated,
        None,
    )
}

/// Discretize an arbitrary potential.
pub fn discretize_potential(
    potential: Potential,
    bx: (f64, f64),
    m: usize,
    nodes: &[f64],
    deltas: &[(f64, f64)],
    ends: (EndCondition, EndCondition),
) -> Result<TridiagonalOperator> {
    discretize_inner(potential, bx, m, nodes, deltas, ends, (false, false), None)
}

/// `-∂²` on `(-π, π)` with `u'(-π) = u'(π)`, `u(π) - u(-π) = c u'(π)`,
/// `c = (2/α) tan(απ)`, plus Dirichlet conditions at `nodes`.
///
/// A node at `±π` turns that end into a Dirichlet end. With free ends the
/// coupling closes the chain into a loop unless at least one interior node
/// cuts it, which is required here so the matrix stays tridiagonal.
pub fn discretize_circle(alpha: f64, m: usize, nodes: &[f64]) -> Result<TridiagonalOperator> {
    if !(alpha > 0.0) {
        return Err(Error::ParameterDomain(format!("alpha must be positive (got {alpha})")));
    }
    let at_end = |z: f64, e: f64| (z - e).abs() < 1e-9;
    let left_pinned = nodes.iter().any(|&z| at_end(z, -PI));
    let right_pinned = nodes.iter().any(|&z| at_end(z, PI));
    let interior: Vec<f64> = nodes
        .iter()
        .copied()
        .filter(|&z| !at_end(z, -PI) && !at_end(z, PI))
        .collect();
    let ends = (
        if left_pinned { EndCondition::Dirichlet } else { EndCondition::Neumann },
        if right_pinned { EndCondition::Dirichlet } else { EndCondition::Neumann },
    );
    let inv_c = circle_inverse_coupling(alpha);
    let corner = if left_pinned || right_pinned {
        None
    } else {
        if !inv_c.is_finite() {
            return Err(Error::Constraint(
                "integer alpha with free ends is periodic; pin both ends or use the analytic spectrum"
                    .into(),
            ));
        }
        if interior.is_empty() {
            return Err(Error::Constraint(
                "coupled ends need at least one interior node to keep the matrix tridiagonal".into(),
            ));
        }
        Some(inv_c)
    };
    if left_pinned != right_pinned {
        // a single pinned end leaves the other one free, which the coupled form does not describe
        return Err(Error::Constraint("pin both circle ends or neither".into()));
    }
    discretize_inner(
        Arc::new(|_| 0.0),
        (-PI, PI),
        m,
        &interior,
        &[],
        ends,
        (false, false),
        corner,
    )
}

/// `1/c = α/(2 tan(απ))`; infinite for integer `α`, zero for half-integer `α`.
pub(crate) fn circle_inverse_coupling(alpha: f64) -> f64 {
    let frac2 = (2.0 * alpha).fract();
    let near = |v: f64, t: f64| (v - t).abs() < 1e-12;
    if near(frac2, 0.0) || near(frac2, 1.0) {
        let k = (2.0 * alpha).round() as i64;
        if k % 2 == 0 {
            return f64::INFINITY;
        }
        return 0.0;
    }
    alpha / (2.0 * (alpha * PI).tan())
}

#[allow(clippy::too_many_arguments)]
fn discretize_inner(
    potential: Potential,
    bx: (f64, f64),
    m: usize,
    nodes: &[f64],
    deltas: &[(f64, f64)],
    ends: (EndCondition, EndCondition),
    truncated: (bool, bool),
    corner: Option<f64>,
) -> Result<TridiagonalOperator> {
    let (a, b) = bx;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::Constraint(format!("invalid box ({a}, {b})")));
    }
    if m < 50 {
        return Err(Error::Constraint(format!("need at least 50 grid points (got {m})")));
    }
    let h = (b - a) / (m as f64 + 1.0);
    let mut breaks: Vec<(f64, Option<f64>)> = Vec::new();
    for &z in nodes {
        breaks.push((z, None));
    }
    for &(z, g) in deltas {
        if !(g >= 0.0) || !g.is_finite() {
            return Err(Error::ParameterDomain(format!("delta strength must be finite and >= 0 (got {g})")));
        }
        breaks.push((z, Some(g)));
    }
    for &(z, _) in &breaks {
        if !(z > a && z < b) {
            return Err(Error::Constraint(format!("constraint at {z} is not inside ({a}, {b})")));
        }
        if z - a < 0.5 * h || b - z < 0.5 * h {
            return Err(Error::Constraint(format!(
                "constraint at {z} collides with a box endpoint at spacing {h}"
            )));
        }
    }
    breaks.sort_by(|p, q| p.0.total_cmp(&q.0));
    // merge coincident breakpoints: a node absorbs deltas, deltas add up
    let mut merged: Vec<(f64, Option<f64>)> = Vec::new();
    for (z, kind) in breaks {
        match merged.last_mut() {
            Some(last) if (z - last.0).abs() <= 1e-12 * z.abs().max(1.0) => {
                last.1 = match (last.1, kind) {
                    (Some(g1), Some(g2)) => Some(g1 + g2),
                    _ => None,
                };
            }
            _ => merged.push((z, kind)),
        }
    }
    let mut cuts = vec![a];
    cuts.extend(merged.iter().map(|p| p.0));
    cuts.push(b);
    let intervals = cuts
        .windows(2)
        .map(|w| (((w[1] - w[0]) / h).round() as usize).max(2))
        .collect();
    assemble(Layout {
        potential,
        a,
        b,
        m,
        ends,
        truncated,
        breaks: merged,
        intervals,
        corner,
    })
}

#[derive(Clone, Copy, PartialEq)]
enum PointKind {
    Free,
    Pinned,
    Delta(f64),
}

fn assemble(layout: Layout) -> Result<TridiagonalOperator> {
    let Layout {
        ref potential,
        a,
        b,
        m,
        ends,
        ..
    } = layout;
    let h = (b - a) / (m as f64 + 1.0);

    // full grid including box ends and breakpoints
    let mut xs: Vec<f64> = Vec::new();
    let mut kinds: Vec<PointKind> = Vec::new();
    let mut cuts = vec![(a, PointKind::Free)];
    cuts.extend(layout.breaks.iter().map(|&(z, k)| {
        (z, k.map_or(PointKind::Pinned, PointKind::Delta))
    }));
    cuts.push((b, PointKind::Free));
    for (seg, w) in cuts.windows(2).enumerate() {
        let n = layout.intervals[seg];
        let step = (w[1].0 - w[0].0) / n as f64;
        for j in 0..n {
            xs.push(if j == 0 { w[0].0 } else { w[0].0 + j as f64 * step });
            kinds.push(if j == 0 { w[0].1 } else { PointKind::Free });
        }
    }
    xs.push(b);
    kinds.push(PointKind::Free);
    let last = xs.len() - 1;
    if ends.0 == EndCondition::Dirichlet {
        kinds[0] = PointKind::Pinned;
    }
    if ends.1 == EndCondition::Dirichlet {
        kinds[last] = PointKind::Pinned;
    }

    let mut points = Vec::new();
    let mut masses = Vec::new();
    let mut diag = Vec::new();
    let mut off = Vec::new(); // coupling to the next unknown in natural order
    let mut stiff_next: Vec<f64> = Vec::new();
    for i in 0..xs.len() {
        if kinds[i] == PointKind::Pinned {
            continue;
        }
        let hl = if i > 0 { xs[i] - xs[i - 1] } else { 0.0 };
        let hr = if i < last { xs[i + 1] - xs[i] } else { 0.0 };
        let mass = 0.5 * (hl + hr);
        let mut k = 0.0;
        if hl > 0.0 {
            k += 1.0 / hl;
        }
        if hr > 0.0 {
            k += 1.0 / hr;
        }
        let v = potential(xs[i]);
        if !v.is_finite() {
            return Err(Error::SingularPotential(xs[i]));
        }
        let g = match kinds[i] {
            PointKind::Delta(g) => g,
            _ => 0.0,
        };
        points.push(xs[i]);
        masses.push(mass);
        diag.push((k + g) / mass + v);
        let next_free = i < last && kinds[i + 1] != PointKind::Pinned;
        stiff_next.push(if next_free { -1.0 / hr } else { 0.0 });
    }
    if points.is_empty() {
        return Err(Error::Constraint("no unknowns left after pinning".into()));
    }
    for i in 0..points.len() - 1 {
        off.push(stiff_next[i] / (masses[i] * masses[i + 1]).sqrt());
    }

    let pinned: Vec<f64> = layout
        .breaks
        .iter()
        .filter(|p| p.1.is_none())
        .map(|p| p.0)
        .collect();

    let mut op = TridiagonalOperator {
        diagonal: diag,
        offdiagonal: off,
        grid: Grid {
            points,
            masses,
            spacing: h,
            truncated_left: layout.truncated.0,
            truncated_right: layout.truncated.1,
        },
        pinned,
        corner: None,
        layout: layout.clone(),
    };
    if let Some(inv_c) = layout.corner {
        close_corner(&mut op, inv_c);
    }
    Ok(op)
}

/// Reorder the chain `B_0 | B_1 | … | B_k` into `B_1 … B_{k-1}, rev(B_0), rev(B_k)`
/// so that the end-to-end coupling becomes an ordinary off-diagonal entry.
fn close_corner(op: &mut TridiagonalOperator, inv_c: f64) {
    let blocks = op.blocks();
    let first = blocks[0].clone();
    let lastb = blocks[blocks.len() - 1].clone();
    let mut order: Vec<usize> = Vec::with_capacity(op.dimension());
    for blk in &blocks[1..blocks.len() - 1] {
        order.extend(blk.clone());
    }
    order.extend(first.clone().rev());
    order.extend(lastb.clone().rev());

    let n = op.dimension();
    let i0 = 0; // unknown at -π
    let in_ = n - 1; // unknown at +π
    let mut diag = op.diagonal.clone();
    let ml = op.grid.masses[i0];
    let mr = op.grid.masses[in_];
    diag[i0] -= inv_c / ml;
    diag[in_] -= inv_c / mr;
    let corner_entry = inv_c / (ml * mr).sqrt();

    let new_diag: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut new_off = Vec::with_capacity(n - 1);
    for w in order.windows(2) {
        let (p, q) = (w[0], w[1]);
        let v = if p.abs_diff(q) == 1 {
            op.offdiagonal[p.min(q)]
        } else if (p == i0 && q == in_) || (p == in_ && q == i0) {
            corner_entry
        } else {
            0.0
        };
        new_off.push(v);
    }
    let points = order.iter().map(|&i| op.grid.points[i]).collect();
    let masses = order.iter().map(|&i| op.grid.masses[i]).collect();
    let left = order.iter().position(|&i| i == i0).unwrap();
    let right = order.iter().position(|&i| i == in_).unwrap();
    op.diagonal = new_diag;
    op.offdiagonal = new_off;
    op.grid.points = points;
    op.grid.masses = masses;
    op.corner = Some(CornerCoupling {
        coefficient: 1.0 / inv_c,
        left,
        right,
    });
}
