use serde::{Deserialize, Serialize};

use crate::{CoreError, PcdParams};

/// Sorted reference points and the `m + 1` open cells they induce.
#[derive(Debug, Clone, PartialEq)]
pub struct Intervalization {
    y: Vec<f64>,
}

/// One open cell `(lo, hi)`; the end cells have an infinite side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub index: usize,
    pub lo: f64,
    pub hi: f64,
}

impl Cell {
    pub fn unit() -> Self {
        Cell { index: 1, lo: 0.0, hi: 1.0 }
    }

    pub fn is_left_end(&self) -> bool {
        self.lo == f64::NEG_INFINITY
    }

    pub fn is_right_end(&self) -> bool {
        self.hi == f64::INFINITY
    }

    pub fn is_middle(&self) -> bool {
        !self.is_left_end() && !self.is_right_end()
    }

    /// `M_c = lo + c (hi - lo)`, only meaningful for middle cells. Clamped so
    /// rounding never pushes it outside the cell.
    pub fn center(&self, c: f64) -> Option<f64> {
        self.is_middle()
            .then(|| (self.lo + c * (self.hi - self.lo)).clamp(self.lo, self.hi))
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }
}

pub fn intervalize(y_points: &[f64]) -> Result<Intervalization, CoreError> {
    if y_points.is_empty() {
        return Err(CoreError::EmptyReference);
    }
    if let Some(&bad) = y_points.iter().find(|v| !v.is_finite()) {
        return Err(CoreError::DegenerateReference(bad));
    }
    let mut y = y_points.to_vec();
    y.sort_by(f64::total_cmp);
    if let Some(w) = y.windows(2).find(|w| w[0] == w[1]) {
        return Err(CoreError::DegenerateReference(w[0]));
    }
    Ok(Intervalization { y })
}

impl Intervalization {
    pub fn y_sorted(&self) -> &[f64] {
        &self.y
    }

    /// Number of reference points.
    pub fn m(&self) -> usize {
        self.y.len()
    }

    pub fn num_intervals(&self) -> usize {
        self.y.len() + 1
    }

    pub fn cell(&self, i: usize) -> Cell {
        let m = self.y.len();
        assert!(i <= m, "cell index {i} out of range");
        let lo = if i == 0 { f64::NEG_INFINITY } else { self.y[i - 1] };
        let hi = if i == m { f64::INFINITY } else { self.y[i] };
        Cell { index: i, lo, hi }
    }

    pub fn cells(&self) -> Vec<Cell> {
        (0..self.num_intervals()).map(|i| self.cell(i)).collect()
    }

    /// Centers of the `m - 1` middle cells, left to right.
    pub fn centers(&self, c: f64) -> Vec<f64> {
        (1..self.y.len()).map(|i| self.cell(i).center(c).unwrap()).collect()
    }

    /// Index of the cell containing `x`.
    pub fn locate(&self, x: f64) -> Result<usize, CoreError> {
        if !x.is_finite() {
            return Err(CoreError::NonFinite(x));
        }
        match self.y.binary_search_by(|v| v.total_cmp(&x)) {
            Ok(_) => Err(CoreError::CoincidentPoint(x)),
            Err(pos) => Ok(pos),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionKind {
    OpenInterval,
    Singleton,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProximityRegion {
    pub lo: f64,
    pub hi: f64,
    pub kind: RegionKind,
}

impl ProximityRegion {
    /// Strict membership; no tolerance is applied.
    pub fn contains(&self, z: f64) -> bool {
        match self.kind {
            RegionKind::OpenInterval => self.lo < z && z < self.hi,
            RegionKind::Singleton => z == self.lo,
        }
    }
}

/// `N(x, r, c)` for a point in `cell`. `center` is ignored for end cells and
/// required (inside the closed cell) for middle cells. A point exactly on the
/// center takes the left branch.
pub fn proximity_region(
    x: f64,
    cell: Cell,
    center: Option<f64>,
    params: PcdParams,
) -> Result<ProximityRegion, CoreError> {
    if !x.is_finite() {
        return Err(CoreError::NonFinite(x));
    }
    if x < cell.lo || x > cell.hi {
        return Err(CoreError::OutOfInterval { x, lo: cell.lo, hi: cell.hi });
    }
    if x == cell.lo || x == cell.hi {
        return Ok(ProximityRegion { lo: x, hi: x, kind: RegionKind::Singleton });
    }
    let open = |lo, hi| ProximityRegion { lo, hi, kind: RegionKind::OpenInterval };
    if params.is_infinite() {
        return Ok(open(cell.lo, cell.hi));
    }
    let r = params.r();
    if cell.is_left_end() {
        return Ok(open(cell.hi - r * (cell.hi - x), cell.hi));
    }
    if cell.is_right_end() {
        return Ok(open(cell.lo, cell.lo + r * (x - cell.lo)));
    }
    let m = match center {
        Some(m) if m >= cell.lo && m <= cell.hi => m,
        Some(m) => return Err(CoreError::OutOfInterval { x: m, lo: cell.lo, hi: cell.hi }),
        None => cell.center(params.c()).unwrap(),
    };
    if x <= m {
        Ok(open(cell.lo, (cell.lo + r * (x - cell.lo)).min(cell.hi)))
    } else {
        Ok(open((cell.hi - r * (cell.hi - x)).max(cell.lo), cell.hi))
    }
}

/// One piece of a Γ₁-region with its endpoint closure flags.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gamma1Piece {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Gamma1Piece {
    fn contains(&self, z: f64) -> bool {
        let above = if self.lo_closed { z >= self.lo } else { z > self.lo };
        let below = if self.hi_closed { z <= self.hi } else { z < self.hi };
        above && below
    }
}

/// Union of at most two pieces meeting at the center.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Gamma1Region {
    pub pieces: Vec<Gamma1Piece>,
}

impl Gamma1Region {
    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, z: f64) -> bool {
        self.pieces.iter().any(|p| p.contains(z))
    }

    /// Smallest and largest endpoint over the pieces, when nonempty.
    pub fn hull(&self) -> Option<(f64, f64)> {
        let lo = self.pieces.iter().map(|p| p.lo).reduce(f64::min)?;
        let hi = self.pieces.iter().map(|p| p.hi).reduce(f64::max)?;
        Some((lo, hi))
    }
}

/// Γ₁ on the unit cell from the extremes of the sample:
/// `(max/r, c] ∪ [c, (min + r - 1)/r)`, empty pieces dropped.
pub fn gamma1_unit(min: f64, max: f64, r: f64, c: f64) -> Gamma1Region {
    let (a, b) = if r == f64::INFINITY {
        (0.0, 1.0)
    } else {
        (max / r, (min + r - 1.0) / r)
    };
    let mut pieces = Vec::with_capacity(2);
    if a < c {
        pieces.push(Gamma1Piece { lo: a, hi: c, lo_closed: false, hi_closed: true });
    }
    if c < b {
        pieces.push(Gamma1Piece { lo: c, hi: b, lo_closed: true, hi_closed: false });
    }
    Gamma1Region { pieces }
}

/// Γ₁-region of the points of one middle cell, computed on the unit cell and
/// mapped back affinely.
pub fn gamma1_region(
    points: &[f64],
    cell: Cell,
    center: f64,
    params: PcdParams,
) -> Result<Gamma1Region, CoreError> {
    if points.is_empty() {
        return Err(CoreError::EmptyCell);
    }
    if !cell.is_middle() {
        return Err(CoreError::OutOfInterval { x: center, lo: cell.lo, hi: cell.hi });
    }
    if let Some(&x) = points.iter().find(|&&x| !cell.contains(x)) {
        return Err(CoreError::OutOfInterval { x, lo: cell.lo, hi: cell.hi });
    }
    let w = cell.hi - cell.lo;
    let to_unit = |x: f64| (x - cell.lo) / w;
    let from_unit = |u: f64| cell.lo + u * w;
    let min = points.iter().copied().fold(f64::INFINITY, f64::min);
    let max = points.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let unit = gamma1_unit(to_unit(min), to_unit(max), params.r(), to_unit(center));
    let pieces = unit
        .pieces
        .into_iter()
        .map(|p| Gamma1Piece {
            lo: if p.lo_closed { center } else { from_unit(p.lo) },
            hi: if p.hi_closed { center } else { from_unit(p.hi) },
            ..p
        })
        .collect();
    Ok(Gamma1Region { pieces })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(r: f64, c: f64) -> PcdParams {
        PcdParams::new(r, c).unwrap()
    }

    #[test]
    fn intervalize_sorts_and_rejects_ties() {
        let iv = intervalize(&[3.0, 1.0, 2.0]).unwrap();
        assert_eq!(iv.y_sorted(), &[1.0, 2.0, 3.0]);
        assert_eq!(iv.num_intervals(), 4);
        assert_eq!(intervalize(&[0.0, 0.0]), Err(CoreError::DegenerateReference(0.0)));
        assert_eq!(intervalize(&[]), Err(CoreError::EmptyReference));
    }

    #[test]
    fn cells_of_unit_reference() {
        let iv = intervalize(&[0.0, 1.0]).unwrap();
        let cells = iv.cells();
        assert_eq!((cells[0].lo, cells[0].hi), (f64::NEG_INFINITY, 0.0));
        assert_eq!((cells[1].lo, cells[1].hi), (0.0, 1.0));
        assert_eq!((cells[2].lo, cells[2].hi), (1.0, f64::INFINITY));
        assert_eq!(iv.centers(0.25), vec![0.25]);
        assert_eq!(iv.locate(0.5), Ok(1));
        assert_eq!(iv.locate(1.0), Err(CoreError::CoincidentPoint(1.0)));
    }

    #[test]
    fn region_branches() {
        let cell = Cell::unit();
        let left = proximity_region(0.3, cell, Some(0.5), p(2.0, 0.5)).unwrap();
        assert_eq!((left.lo, left.hi), (0.0, 0.6));
        let right = proximity_region(0.6, cell, Some(0.5), p(2.0, 0.5)).unwrap();
        assert!((right.lo - 0.2).abs() < 1e-15 && right.hi == 1.0);
        let inf = proximity_region(0.3, cell, Some(0.5), PcdParams::infinite(0.5).unwrap()).unwrap();
        assert_eq!((inf.lo, inf.hi), (0.0, 1.0));
        // tie at the center goes left
        let tie = proximity_region(0.5, cell, Some(0.5), p(1.5, 0.5)).unwrap();
        assert_eq!((tie.lo, tie.hi), (0.0, 0.75));
    }

    #[test]
    fn region_end_cells_ignore_c() {
        let iv = intervalize(&[0.0, 1.0]).unwrap();
        let a = proximity_region(-0.5, iv.cell(0), None, p(2.0, 0.1)).unwrap();
        assert_eq!((a.lo, a.hi), (-1.0, 0.0));
        let b = proximity_region(1.5, iv.cell(2), None, p(3.0, 0.9)).unwrap();
        assert_eq!((b.lo, b.hi), (1.0, 2.5));
    }

    #[test]
    fn region_errors_and_singletons() {
        let cell = Cell::unit();
        assert!(matches!(
            proximity_region(1.5, cell, Some(0.5), p(2.0, 0.5)),
            Err(CoreError::OutOfInterval { .. })
        ));
        let s = proximity_region(0.0, cell, Some(0.5), p(2.0, 0.5)).unwrap();
        assert_eq!(s.kind, RegionKind::Singleton);
        assert!(s.contains(0.0) && !s.contains(0.1));
    }

    #[test]
    fn region_stays_inside_cell() {
        let cell = Cell { index: 1, lo: 2.0, hi: 5.0 };
        let reg = proximity_region(4.0, cell, Some(2.6), p(10.0, 0.2)).unwrap();
        assert_eq!((reg.lo, reg.hi), (2.0, 5.0));
    }

    #[test]
    fn gamma1_examples() {
        let g = gamma1_region(&[0.2, 0.6], Cell::unit(), 0.5, p(2.0, 0.5)).unwrap();
        let (lo, hi) = g.hull().unwrap();
        assert!((lo - 0.3).abs() < 1e-15 && (hi - 0.6).abs() < 1e-15);
        assert!(g.contains(0.5) && g.contains(0.45) && !g.contains(0.3));

        // left piece (0.6, 0.3] is empty
        let g = gamma1_region(&[0.25, 0.9], Cell::unit(), 0.3, p(1.5, 0.3)).unwrap();
        assert_eq!(g.pieces.len(), 1);
        assert!(g.pieces[0].lo_closed);
        assert!((g.pieces[0].hi - 0.75 / 1.5).abs() < 1e-15);

        let g = gamma1_region(&[0.1, 0.9], Cell::unit(), 0.4, PcdParams::infinite(0.4).unwrap()).unwrap();
        assert_eq!(g.hull(), Some((0.0, 1.0)));
        assert_eq!(gamma1_region(&[], Cell::unit(), 0.5, p(2.0, 0.5)), Err(CoreError::EmptyCell));
    }

    #[test]
    fn gamma1_general_cell_matches_unit_after_mapping() {
        let cell = Cell { index: 1, lo: 10.0, hi: 14.0 };
        let g = gamma1_region(&[10.8, 12.4], cell, 12.0, p(2.0, 0.5)).unwrap();
        let (lo, hi) = g.hull().unwrap();
        assert!((lo - 11.2).abs() < 1e-12 && (hi - 12.4).abs() < 1e-12);
    }
}
