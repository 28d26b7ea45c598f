use crate::geometry::{intervalize, proximity_region, Cell, Intervalization, ProximityRegion};
use crate::{CoreError, PcdParams};

#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub x: f64,
    pub cell: usize,
    pub region: ProximityRegion,
}

/// Vertices in input order, arcs `i -> j` (for `i != j`) iff `x_j ∈ N(x_i)`.
/// A vertex always dominates itself; that membership is implicit.
#[derive(Debug, Clone)]
pub struct CatchDigraph {
    params: PcdParams,
    intervals: Intervalization,
    vertices: Vec<Vertex>,
    arcs: Vec<Vec<usize>>,
    // vertex indices of each cell, sorted by coordinate
    members: Vec<Vec<usize>>,
}

pub fn build_digraph(
    x_points: &[f64],
    y_points: &[f64],
    params: PcdParams,
) -> Result<CatchDigraph, CoreError> {
    let intervals = intervalize(y_points)?;
    let cells = intervals.cells();
    let mut members = vec![Vec::new(); cells.len()];
    let mut vertices = Vec::with_capacity(x_points.len());
    for (idx, &x) in x_points.iter().enumerate() {
        let cell = intervals.locate(x)?;
        let c = cells[cell];
        let region = proximity_region(x, c, c.center(params.c()), params)?;
        vertices.push(Vertex { x, cell, region });
        members[cell].push(idx);
    }
    for m in members.iter_mut() {
        m.sort_by(|&a, &b| vertices[a].x.total_cmp(&vertices[b].x).then(a.cmp(&b)));
    }

    let mut arcs = vec![Vec::new(); vertices.len()];
    for m in &members {
        let coords: Vec<f64> = m.iter().map(|&v| vertices[v].x).collect();
        for &i in m {
            let reg = vertices[i].region;
            let start = coords.partition_point(|&z| z <= reg.lo);
            let end = coords.partition_point(|&z| z < reg.hi);
            arcs[i].extend(
                m[start..end.max(start)]
                    .iter()
                    .copied()
                    .filter(|&j| j != i && reg.contains(vertices[j].x)),
            );
        }
    }
    Ok(CatchDigraph { params, intervals, vertices, arcs, members })
}

impl CatchDigraph {
    pub fn params(&self) -> PcdParams {
        self.params
    }

    pub fn intervals(&self) -> &Intervalization {
        &self.intervals
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn x_points(&self) -> Vec<f64> {
        self.vertices.iter().map(|v| v.x).collect()
    }

    pub fn out_neighbors(&self, i: usize) -> &[usize] {
        &self.arcs[i]
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        i != j && self.vertices[i].region.contains(self.vertices[j].x)
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.iter().map(Vec::len).sum()
    }

    /// Vertex indices of cell `i`, sorted by coordinate.
    pub fn cell_members(&self, i: usize) -> &[usize] {
        &self.members[i]
    }

    pub fn cell(&self, i: usize) -> Cell {
        self.intervals.cell(i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_example_arcs() {
        // dyadic coordinates so that 0.25 sits exactly on the boundary of N(0.625)
        let g = build_digraph(&[0.25, 0.3125, 0.625], &[0.0, 1.0], PcdParams::new(2.0, 0.5).unwrap()).unwrap();
        assert_eq!(g.out_neighbors(0), &[1]);
        assert_eq!(g.out_neighbors(1), &[0]);
        assert_eq!(g.out_neighbors(2), &[1]);
        assert_eq!(g.num_arcs(), 3);
    }

    #[test]
    fn empty_and_coincident() {
        let g = build_digraph(&[], &[0.0, 1.0], PcdParams::new(2.0, 0.5).unwrap()).unwrap();
        assert!(g.is_empty());
        let e = build_digraph(&[1.0], &[0.0, 1.0], PcdParams::new(2.0, 0.5).unwrap());
        assert_eq!(e.err(), Some(CoreError::CoincidentPoint(1.0)));
    }

    #[test]
    fn arcs_never_cross_cells() {
        let x = [-0.3, 0.1, 0.9, 1.2, 1.9, 2.5];
        let g = build_digraph(&x, &[0.0, 1.0, 2.0], PcdParams::infinite(0.5).unwrap()).unwrap();
        for i in 0..g.len() {
            for &j in g.out_neighbors(i) {
                assert_eq!(g.vertices()[i].cell, g.vertices()[j].cell);
            }
        }
        // r = ∞ joins everything inside a cell
        assert_eq!(g.out_neighbors(1), &[2]);
    }
}
