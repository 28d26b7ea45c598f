use serde::{Deserialize, Serialize};

use crate::digraph::CatchDigraph;
use crate::geometry::{proximity_region, Cell, Intervalization};
use crate::{CoreError, PcdParams};

pub const DEFAULT_ORACLE_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalGamma {
    pub index: usize,
    pub n_i: usize,
    pub gamma_i: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominationOutcome {
    pub gamma: usize,
    /// Occupied cells only.
    pub per_interval: Vec<IntervalGamma>,
    /// Indices into the digraph's vertex list.
    pub witness_indices: Vec<usize>,
    pub witness_set: Vec<f64>,
}

impl DominationOutcome {
    fn assemble(g: &CatchDigraph, per_interval: Vec<IntervalGamma>, mut witness: Vec<usize>) -> Self {
        witness.sort_unstable();
        let witness_set = witness.iter().map(|&i| g.vertices()[i].x).collect();
        DominationOutcome {
            gamma: witness.len(),
            per_interval,
            witness_indices: witness,
            witness_set,
        }
    }

    /// True when every vertex is a witness or lies in a witness' region.
    pub fn dominates(&self, g: &CatchDigraph) -> bool {
        (0..g.len()).all(|v| {
            self.witness_indices.iter().any(|&w| w == v || g.has_arc(w, v))
        })
    }
}

/// Middle cell split at the center: `(X⁻, X⁺)` as vertex indices.
fn split_at_center(g: &CatchDigraph, members: &[usize], center: f64) -> (Option<usize>, Option<usize>) {
    let v = g.vertices();
    let k = members.partition_point(|&i| v[i].x <= center);
    let minus = k.checked_sub(1).map(|j| members[j]);
    let plus = members.get(k).copied();
    (minus, plus)
}

/// Linear-time domination number after the per-cell sort done at construction.
pub fn domination_number(g: &CatchDigraph) -> DominationOutcome {
    let params = g.params();
    let v = g.vertices();
    let mut per_interval = Vec::new();
    let mut witness = Vec::new();
    for i in 0..g.intervals().num_intervals() {
        let members = g.cell_members(i);
        if members.is_empty() {
            continue;
        }
        let cell = g.cell(i);
        let first = members[0];
        let last = *members.last().unwrap();
        let chosen: Vec<usize> = if cell.is_left_end() {
            // the point farthest from the reference has the largest region
            vec![first]
        } else if cell.is_right_end() {
            vec![last]
        } else {
            let center = cell.center(params.c()).unwrap();
            match split_at_center(g, members, center) {
                (Some(m), None) => vec![m],
                (None, Some(p)) => vec![p],
                (Some(m), Some(p)) => {
                    if v[m].region.contains(v[last].x) {
                        vec![m]
                    } else if v[p].region.contains(v[first].x) {
                        vec![p]
                    } else {
                        vec![m, p]
                    }
                }
                (None, None) => unreachable!("occupied cell"),
            }
        };
        per_interval.push(IntervalGamma { index: i, n_i: members.len(), gamma_i: chosen.len() });
        witness.extend(chosen);
    }
    DominationOutcome::assemble(g, per_interval, witness)
}

/// `γ = k₃ + k₄`, valid only for `r = 1`.
pub fn domination_number_r1(g: &CatchDigraph) -> Result<DominationOutcome, CoreError> {
    let params = g.params();
    if params.is_infinite() || params.r() != 1.0 {
        return Err(CoreError::WrongSpecialization);
    }
    let mut per_interval = Vec::new();
    let mut witness = Vec::new();
    for i in 0..g.intervals().num_intervals() {
        let members = g.cell_members(i);
        if members.is_empty() {
            continue;
        }
        let cell = g.cell(i);
        let chosen: Vec<usize> = if cell.is_left_end() {
            vec![members[0]]
        } else if cell.is_right_end() {
            vec![*members.last().unwrap()]
        } else {
            let (m, p) = split_at_center(g, members, cell.center(params.c()).unwrap());
            m.into_iter().chain(p).collect()
        };
        per_interval.push(IntervalGamma { index: i, n_i: members.len(), gamma_i: chosen.len() });
        witness.extend(chosen);
    }
    Ok(DominationOutcome::assemble(g, per_interval, witness))
}

pub fn brute_force_domination(g: &CatchDigraph) -> Result<DominationOutcome, CoreError> {
    brute_force_domination_with_cap(g, DEFAULT_ORACLE_CAP)
}

/// Exhaustive search over vertex subsets by increasing size; the first
/// dominating subset in lexicographic index order wins.
pub fn brute_force_domination_with_cap(g: &CatchDigraph, cap: usize) -> Result<DominationOutcome, CoreError> {
    let n = g.len();
    if n > cap || n > 63 {
        return Err(CoreError::OracleTooLarge { n, cap });
    }
    let closed: Vec<u64> = (0..n)
        .map(|i| (0..n).filter(|&j| j == i || g.has_arc(i, j)).fold(0u64, |acc, j| acc | (1 << j)))
        .collect();
    let full: u64 = if n == 0 { 0 } else { u64::MAX >> (64 - n) };

    let mut found = Vec::new();
    'size: for k in 0..=n {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            let cover = combo.iter().fold(0u64, |acc, &i| acc | closed[i]);
            if cover == full {
                found = combo;
                break 'size;
            }
            // next combination in lexicographic order
            let mut pos = k;
            while pos > 0 && combo[pos - 1] == n - k + pos - 1 {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            combo[pos - 1] += 1;
            for j in pos..k {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }

    let mut per_interval = Vec::new();
    for i in 0..g.intervals().num_intervals() {
        let members = g.cell_members(i);
        if members.is_empty() {
            continue;
        }
        let gamma_i = found.iter().filter(|&&w| g.vertices()[w].cell == i).count();
        per_interval.push(IntervalGamma { index: i, n_i: members.len(), gamma_i });
    }
    Ok(DominationOutcome::assemble(g, per_interval, found))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BoundCounts {
    /// middle cells with more than one point
    pub k1: usize,
    /// middle cells with exactly one point
    pub k2: usize,
    /// occupied end cells
    pub k3: usize,
    /// occupied half-cells of middle cells (split at the center, ties left)
    pub k4: usize,
}

impl BoundCounts {
    pub fn upper(&self) -> usize {
        2 * self.k1 + self.k2 + self.k3
    }
}

pub fn bound_counts(g: &CatchDigraph) -> BoundCounts {
    let mut out = BoundCounts::default();
    let c = g.params().c();
    for i in 0..g.intervals().num_intervals() {
        let members = g.cell_members(i);
        let cell = g.cell(i);
        if !cell.is_middle() {
            out.k3 += usize::from(!members.is_empty());
            continue;
        }
        match members.len() {
            0 => {}
            1 => out.k2 += 1,
            _ => out.k1 += 1,
        }
        let (m, p) = split_at_center(g, members, cell.center(c).unwrap());
        out.k4 += usize::from(m.is_some()) + usize::from(p.is_some());
    }
    out
}

#[derive(Clone, Copy)]
struct CellSummary {
    min: f64,
    max: f64,
    minus: f64,
    plus: f64,
}

/// Domination number without building the digraph; used by the simulation
/// loops. Agrees with [`domination_number`] on every input.
pub fn gamma_only(x_points: &[f64], intervals: &Intervalization, params: PcdParams) -> Result<usize, CoreError> {
    let k = intervals.num_intervals();
    if k == 2 {
        // one reference point: just the occupied end cells
        let y = intervals.y_sorted()[0];
        let mut left = false;
        let mut right = false;
        for &x in x_points {
            if x == y || !x.is_finite() {
                intervals.locate(x)?;
            }
            left |= x < y;
            right |= x > y;
        }
        return Ok(usize::from(left) + usize::from(right));
    }
    let empty = CellSummary {
        min: f64::INFINITY,
        max: f64::NEG_INFINITY,
        minus: f64::NEG_INFINITY,
        plus: f64::INFINITY,
    };
    let mut cells = vec![empty; k];
    let centers = intervals.centers(params.c());
    for &x in x_points {
        let i = intervals.locate(x)?;
        let s = &mut cells[i];
        s.min = s.min.min(x);
        s.max = s.max.max(x);
        if i > 0 && i < k - 1 {
            if x <= centers[i - 1] {
                s.minus = s.minus.max(x);
            } else {
                s.plus = s.plus.min(x);
            }
        }
    }
    let mut gamma = 0;
    for (i, s) in cells.iter().enumerate() {
        if s.min > s.max {
            continue;
        }
        if i == 0 || i == k - 1 {
            gamma += 1;
            continue;
        }
        gamma += middle_gamma(s, intervals.cell(i), centers[i - 1], params)?;
    }
    Ok(gamma)
}

fn middle_gamma(s: &CellSummary, cell: Cell, center: f64, params: PcdParams) -> Result<usize, CoreError> {
    if s.minus == f64::NEG_INFINITY || s.plus == f64::INFINITY {
        return Ok(1);
    }
    let nm = proximity_region(s.minus, cell, Some(center), params)?;
    if nm.contains(s.max) {
        return Ok(1);
    }
    let np = proximity_region(s.plus, cell, Some(center), params)?;
    Ok(if np.contains(s.min) { 1 } else { 2 })
}
