//! States, state loops, state graphs and state-surface invariants.
//!
//! A state assigns `+` or `-` to every crossing.  The `+` smoothing joins
//! slots (0,3) and (1,2); the `-` smoothing joins (0,1) and (2,3).  With the
//! slot conventions of [`crate::diagram`], the orientation-respecting
//! (Seifert) smoothing at a crossing is the one matching its sign, so the
//! Seifert state of an oriented diagram is its sign function.

use crate::diagram::{CrossingId, Diagram, DiagramError, EdgeId, End, Orientation};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// A smoothing assignment, indexed by crossing id; entries are +1 or -1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct State {
    pub signs: Vec<i8>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StateError {
    #[error("state covers {0} crossings, diagram has {1}")]
    WrongLength(usize, usize),
    #[error("state string may contain only + and - characters")]
    BadChar,
    #[error("boundary slope is defined for knots, diagram has {0} components")]
    SlopeOnLink(usize),
    #[error("state enumeration cap exceeded: {0} crossings > cap {1}")]
    CapExceeded(usize, usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

impl State {
    pub fn all_plus(n: usize) -> Self {
        State { signs: vec![1; n] }
    }

    pub fn all_minus(n: usize) -> Self {
        State { signs: vec![-1; n] }
    }

    pub fn from_mask(mask: u64, n: usize) -> Self {
        // Bit set means '-', so mask order is lexicographic on "+-" strings.
        State {
            signs: (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect(),
        }
    }

    pub fn parse(s: &str) -> Result<Self, StateError> {
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(StateError::BadChar),
            })
            .collect::<Result<_, _>>()?;
        Ok(State { signs })
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn flipped(&self, c: CrossingId) -> State {
        let mut s = self.clone();
        s.signs[c] = -s.signs[c];
        s
    }

    pub fn negated(&self) -> State {
        State {
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }

    fn check(&self, d: &Diagram) -> Result<(), StateError> {
        if self.signs.len() != d.crossing_count() {
            return Err(StateError::WrongLength(self.signs.len(), d.crossing_count()));
        }
        Ok(())
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.signs {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The two smoothing arcs at a crossing, each as its ordered slot pair.
///
/// The returned orientation (first slot -> second slot) is the direction in
/// which the half-twisted band at the crossing traverses the arc, used by the
/// disk-band cell complex.
pub fn smoothing_arcs(sign: i8) -> [[u8; 2]; 2] {
    if sign > 0 {
        [[0, 3], [1, 2]]
    } else {
        [[0, 1], [3, 2]]
    }
}

/// State loops of a smoothing.
pub struct StateLoops {
    /// Each loop as the cyclic sequence of slot-ends it visits.
    pub loops: Vec<Vec<End>>,
    /// Loop index at each slot-end, indexed `[crossing][slot]`.
    pub loop_at: Vec<[usize; 4]>,
    /// Whether the loop trace enters the crossing at this end (as opposed to
    /// leaving it), indexed `[crossing][slot]`.
    pub enters: Vec<[bool; 4]>,
    /// Crossing-free components of the diagram, each a loop of its own.
    pub free_loops: usize,
}

impl StateLoops {
    pub fn count(&self) -> usize {
        self.loops.len() + self.free_loops
    }

    /// The one or two loops touched by the smoothing at a crossing.
    pub fn loops_at_crossing(&self, _d: &Diagram, s: &State, c: CrossingId) -> [usize; 2] {
        let arcs = smoothing_arcs(s.signs[c]);
        [
            self.loop_at[c][arcs[0][0] as usize],
            self.loop_at[c][arcs[1][0] as usize],
        ]
    }
}

/// Follow the strands through the chosen smoothings.
pub fn smooth(d: &Diagram, s: &State) -> Result<StateLoops, StateError> {
    s.check(d)?;
    let n = d.crossing_count();
    // Arc partner of each slot under the smoothing.
    let mut partner = vec![[0u8; 4]; n];
    for c in 0..n {
        for arc in smoothing_arcs(s.signs[c]) {
            partner[c][arc[0] as usize] = arc[1];
            partner[c][arc[1] as usize] = arc[0];
        }
    }
    let mut loop_at = vec![[usize::MAX; 4]; n];
    let mut enters = vec![[false; 4]; n];
    let mut loops: Vec<Vec<End>> = Vec::new();

    // Deterministic loop numbering: scan edges by label; a new loop starts at
    // the smallest-labelled edge not yet traced.
    let mut edge_order: Vec<EdgeId> = (0..d.edges.len()).collect();
    edge_order.sort_by_key(|&e| d.edges[e].label);
    for &e0 in &edge_order {
        let start = d.edges[e0].ends[1];
        if loop_at[start.crossing][start.slot as usize] != usize::MAX {
            continue;
        }
        let id = loops.len();
        let mut seq = Vec::new();
        let mut end = start;
        loop {
            // Arrive at `end` along an edge.
            seq.push(end);
            loop_at[end.crossing][end.slot as usize] = id;
            enters[end.crossing][end.slot as usize] = true;
            // Cross the smoothing arc.
            let out = End::new(end.crossing, partner[end.crossing][end.slot as usize]);
            seq.push(out);
            loop_at[out.crossing][out.slot as usize] = id;
            enters[out.crossing][out.slot as usize] = false;
            // Leave along the edge at the arc's far slot.
            end = d.other_end(out);
            if end == start {
                break;
            }
        }
        loops.push(seq);
    }
    Ok(StateLoops {
        loops,
        loop_at,
        enters,
        free_loops: d.free_loops,
    })
}

/// Signed multigraph of a state: one vertex per loop, one edge per crossing.
pub struct StateGraph {
    pub vertex_count: usize,
    /// Per crossing: the two loop endpoints and the state sign.
    pub edges: Vec<GraphEdge>,
    /// Maximal 2-connected blocks as crossing-id sets, ordered by smallest
    /// member.
    pub blocks: Vec<Vec<CrossingId>>,
    pub cut_vertices: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub crossing: CrossingId,
    pub ends: [usize; 2],
    pub sign: i8,
}

impl GraphEdge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }
}

pub fn state_graph(d: &Diagram, s: &State) -> Result<StateGraph, StateError> {
    let loops = smooth(d, s)?;
    state_graph_from_loops(d, s, &loops)
}

pub fn state_graph_from_loops(
    d: &Diagram,
    s: &State,
    loops: &StateLoops,
) -> Result<StateGraph, StateError> {
    let n = d.crossing_count();
    let mut edges = Vec::with_capacity(n);
    for c in 0..n {
        let ends = loops.loops_at_crossing(d, s, c);
        edges.push(GraphEdge {
            crossing: c,
            ends,
            sign: s.signs[c],
        });
    }
    let (blocks, cut_vertices) = biconnected_blocks(loops.loops.len(), &edges);
    Ok(StateGraph {
        vertex_count: loops.loops.len(),
        edges,
        blocks,
        cut_vertices,
    })
}

/// Block decomposition of a multigraph.  Self-loops form their own blocks;
/// blocks are reported as edge sets ordered by smallest crossing id.
fn biconnected_blocks(nv: usize, edges: &[GraphEdge]) -> (Vec<Vec<CrossingId>>, Vec<usize>) {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv]; // (edge index, far vertex)
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        if e.is_loop() {
            blocks.push(vec![i]);
        } else {
            adj[e.ends[0]].push((i, e.ends[1]));
            adj[e.ends[1]].push((i, e.ends[0]));
        }
    }
    let mut disc = vec![usize::MAX; nv];
    let mut low = vec![0usize; nv];
    let mut timer = 0usize;
    let mut edge_stack: Vec<usize> = Vec::new();
    struct Frame {
        v: usize,
        parent_edge: usize,
        cursor: usize,
    }
    for root in 0..nv {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut stack = vec![Frame {
            v: root,
            parent_edge: usize::MAX,
            cursor: 0,
        }];
        while !stack.is_empty() {
            let top = stack.len() - 1;
            let v = stack[top].v;
            if stack[top].cursor < adj[v].len() {
                let (ei, w) = adj[v][stack[top].cursor];
                stack[top].cursor += 1;
                if ei == stack[top].parent_edge {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push(ei);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push(Frame {
                        v: w,
                        parent_edge: ei,
                        cursor: 0,
                    });
                } else if disc[w] < disc[v] {
                    edge_stack.push(ei);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                let frame = stack.pop().unwrap();
                if let Some(parent) = stack.last() {
                    let u = parent.v;
                    low[u] = low[u].min(low[frame.v]);
                    if low[frame.v] >= disc[u] {
                        // Pop the block closed off by the tree edge (u, v).
                        let mut block = Vec::new();
                        while let Some(ei) = edge_stack.pop() {
                            block.push(ei);
                            if ei == frame.parent_edge {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    let mut out: Vec<Vec<CrossingId>> = blocks
        .into_iter()
        .map(|b| {
            let mut ids: Vec<_> = b.into_iter().map(|i| edges[i].crossing).collect();
            ids.sort_unstable();
            ids
        })
        .collect();
    out.sort_by_key(|b| b[0]);
    // A cut vertex lies in at least two blocks.
    let mut membership = vec![0usize; nv];
    for b in &out {
        let mut vs: Vec<usize> = b
            .iter()
            .flat_map(|&c| {
                let e = &edges[c_to_edge(edges, c)];
                [e.ends[0], e.ends[1]]
            })
            .collect();
        vs.sort_unstable();
        vs.dedup();
        for v in vs {
            membership[v] += 1;
        }
    }
    let cuts = (0..nv).filter(|&v| membership[v] >= 2).collect();
    (out, cuts)
}

fn c_to_edge(edges: &[GraphEdge], crossing: CrossingId) -> usize {
    edges
        .iter()
        .position(|e| e.crossing == crossing)
        .expect("crossing has a state-graph edge")
}

/// Seifert state of an oriented diagram: the sign function.
pub fn seifert_state(d: &Diagram, o: &Orientation) -> State {
    State {
        signs: (0..d.crossing_count()).map(|c| d.crossing_sign(o, c)).collect(),
    }
}

/// Adequacy, homogeneity and Seifert-ness of a state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateCheck {
    pub adequate: bool,
    pub homogeneous: bool,
    pub is_seifert: bool,
}

pub fn check_state(d: &Diagram, s: &State) -> Result<StateCheck, StateError> {
    let g = state_graph(d, s)?;
    let adequate = g.edges.iter().all(|e| !e.is_loop());
    let homogeneous = g.blocks.iter().all(|b| {
        let sign = s.signs[b[0]];
        b.iter().all(|&c| s.signs[c] == sign)
    });
    let is_seifert = d
        .all_orientations()
        .iter()
        .any(|o| &seifert_state(d, o) == s);
    Ok(StateCheck {
        adequate,
        homogeneous,
        is_seifert,
    })
}

/// Derived invariants of the state surface (disks on one fixed side of the
/// projection sphere, one half-twisted band per crossing).
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SurfaceSummary {
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub boundary_components: usize,
    /// Framing of the boundary on the peripheral torus, as the linking number
    /// of the knot with its pushoff in the surface.  Knots only.
    pub boundary_slope: Option<i64>,
    /// Genus when orientable, crosscap number otherwise.
    pub genus: i64,
}

pub fn surface_summary(d: &Diagram, s: &State) -> Result<SurfaceSummary, StateError> {
    surface_summary_with_sides(d, s, None)
}

/// As [`surface_summary`], with an explicit side choice per state loop
/// (`true` puts that loop's disk on the far side of the sphere).  The derived
/// invariants do not depend on the choice; the parameter participates in the
/// orientability propagation as a re-gauging.
pub fn surface_summary_with_sides(
    d: &Diagram,
    s: &State,
    sides: Option<&[bool]>,
) -> Result<SurfaceSummary, StateError> {
    let loops = smooth(d, s)?;
    let m = loops.count() as i64;
    let n = d.crossing_count() as i64;
    let euler = m - n;
    let orientable = orientation_propagation(d, &loops, sides);
    let boundary_components = d.component_count();
    let boundary_slope = if boundary_components == 1 {
        Some(boundary_slope_of_knot(d, s))
    } else {
        None
    };
    let genus = if orientable {
        (2 - euler - boundary_components as i64) / 2
    } else {
        2 - euler - boundary_components as i64
    };
    Ok(SurfaceSummary {
        euler_characteristic: euler,
        orientable,
        boundary_components,
        boundary_slope,
        genus,
    })
}

/// Two-coloring of loop-disk orientations.  Each crossing imposes one parity
/// constraint per passing strand: the two strand-ends must carry one
/// incoming and one outgoing direction.
fn orientation_propagation(d: &Diagram, loops: &StateLoops, sides: Option<&[bool]>) -> bool {
    let nl = loops.loops.len();
    let side = |l: usize| sides.map_or(false, |v| v[l]);
    let mut color = vec![u8::MAX; nl];
    let mut constraints: Vec<Vec<(usize, bool)>> = vec![Vec::new(); nl];
    for c in 0..d.crossing_count() {
        for pair in [[0u8, 2], [1, 3]] {
            let e0 = End::new(c, pair[0]);
            let e1 = End::new(c, pair[1]);
            let l0 = loops.loop_at[c][pair[0] as usize];
            let l1 = loops.loop_at[c][pair[1] as usize];
            let entry0 = loops.enters[e0.crossing][e0.slot as usize];
            let entry1 = loops.enters[e1.crossing][e1.slot as usize];
            // f[l0] ^ f[l1] must equal entry0 ^ entry1 ^ 1, re-gauged by sides.
            let parity = entry0 ^ entry1 ^ true ^ side(l0) ^ side(l1);
            constraints[l0].push((l1, parity));
            constraints[l1].push((l0, parity));
        }
    }
    for start in 0..nl {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(w, parity) in &constraints[v] {
                let want = color[v] ^ parity as u8;
                if color[w] == u8::MAX {
                    color[w] = want;
                    stack.push(w);
                } else if color[w] != want {
                    return false;
                }
            }
        }
    }
    true
}

/// lk(K, K_F): each crossing where the state differs from the Seifert
/// smoothing contributes twice its sign.
fn boundary_slope_of_knot(d: &Diagram, s: &State) -> i64 {
    let o = d.canonical_orientation();
    (0..d.crossing_count())
        .map(|c| {
            let sign = d.crossing_sign(&o, c) as i64;
            if s.signs[c] as i64 != sign {
                2 * sign
            } else {
                0
            }
        })
        .sum()
}

/// The two checkerboard states of a diagram: the state whose loops bound the
/// black faces first (black = the color of `faces()[0]`), then the white one.
/// At a crossing, the `+` smoothing arcs live in the corner quadrants at
/// slots 0 and 2.
pub fn checkerboard_states(d: &Diagram) -> (State, State) {
    let color = d.face_two_coloring();
    let face_at = d.face_at_corner();
    let black = State {
        signs: (0..d.crossing_count())
            .map(|c| {
                let q0_black = color[face_at[&End::new(c, 0)]];
                if q0_black {
                    1
                } else {
                    -1
                }
            })
            .collect(),
    };
    let white = black.negated();
    (black, white)
}

/// One Murasugi factor: the sub-diagram of a block with its induced state.
pub struct Leaf {
    pub diagram: Diagram,
    pub state: State,
    /// Original crossing ids, in the order they appear in `diagram`.
    pub crossings: Vec<CrossingId>,
}

/// Murasugi decomposition along the block structure of the state graph: one
/// leaf per block, obtained by smoothing every crossing outside the block.
pub fn murasugi_leaves(d: &Diagram, s: &State) -> Result<Vec<Leaf>, StateError> {
    let g = state_graph(d, s)?;
    g.blocks
        .iter()
        .map(|block| {
            let (diagram, state) = smooth_outside(d, s, block)?;
            Ok(Leaf {
                diagram,
                state,
                crossings: block.clone(),
            })
        })
        .collect()
}

/// Smooth every crossing not in `keep` (sorted), dropping crossing-free
/// loops, and renumber the kept crossings in increasing original order.
pub fn smooth_outside(
    d: &Diagram,
    s: &State,
    keep: &[CrossingId],
) -> Result<(Diagram, State), StateError> {
    s.check(d)?;
    let kept: BTreeMap<CrossingId, usize> =
        keep.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let n = d.crossing_count();
    let mut partner = vec![[0u8; 4]; n];
    for c in 0..n {
        for arc in smoothing_arcs(s.signs[c]) {
            partner[c][arc[0] as usize] = arc[1];
            partner[c][arc[1] as usize] = arc[0];
        }
    }
    // From a kept end, walk through smoothed crossings to the next kept end.
    let walk = |start: End| -> (End, usize) {
        let mut end = d.other_end(start);
        let mut min_label = d.edges[d.edge_at(start)].label;
        while !kept.contains_key(&end.crossing) {
            let out = End::new(end.crossing, partner[end.crossing][end.slot as usize]);
            min_label = min_label.min(d.edges[d.edge_at(out)].label);
            end = d.other_end(out);
        }
        (end, min_label)
    };
    let mut new_edges: Vec<crate::diagram::Edge> = Vec::new();
    let mut slots: Vec<[EdgeId; 4]> = vec![[usize::MAX; 4]; keep.len()];
    for (&c, &ci) in &kept {
        for slot in 0..4u8 {
            if slots[ci][slot as usize] != usize::MAX {
                continue;
            }
            let (far, label) = walk(End::new(c, slot));
            let far_ci = kept[&far.crossing];
            let id = new_edges.len();
            new_edges.push(crate::diagram::Edge {
                ends: [End::new(ci, slot), End::new(far_ci, far.slot)],
                label,
            });
            slots[ci][slot as usize] = id;
            slots[far_ci][far.slot as usize] = id;
        }
    }
    let diagram = Diagram {
        crossings: slots
            .into_iter()
            .map(|sl| crate::diagram::Crossing { slots: sl })
            .collect(),
        edges: new_edges,
        free_loops: 0,
        name: None,
    };
    diagram.validate()?;
    let state = State {
        signs: keep.iter().map(|&c| s.signs[c]).collect(),
    };
    Ok((diagram, state))
}

/// All states of a diagram in lexicographic "+-" order, filtered.
pub fn enumerate_states<'a>(
    d: &'a Diagram,
    cap: usize,
    filter: impl Fn(&Diagram, &State) -> bool + 'a,
) -> Result<impl Iterator<Item = State> + 'a, StateError> {
    let n = d.crossing_count();
    if n > cap {
        return Err(StateError::CapExceeded(n, cap));
    }
    Ok((0..(1u64 << n))
        .map(move |mask| State::from_mask(mask, n))
        .filter(move |s| filter(d, s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::standard;

    #[test]
    fn trefoil_seifert_state_is_all_plus() {
        let d = standard::trefoil();
        let o = d.canonical_orientation();
        let s = seifert_state(&d, &o);
        assert_eq!(s, State::all_plus(3));
        let loops = smooth(&d, &s).unwrap();
        assert_eq!(loops.count(), 2);
    }

    #[test]
    fn trefoil_all_minus_state() {
        let d = standard::trefoil();
        let s = State::all_minus(3);
        let loops = smooth(&d, &s).unwrap();
        assert_eq!(loops.count(), 3);
        let g = state_graph(&d, &s).unwrap();
        assert_eq!(g.vertex_count, 3);
        assert_eq!(g.edges.len(), 3);
        assert!(g.edges.iter().all(|e| !e.is_loop()));
        // The triangle is a single block.
        assert_eq!(g.blocks.len(), 1);
    }

    #[test]
    fn trefoil_all_plus_graph_counts() {
        let d = standard::trefoil();
        let s = State::all_plus(3);
        let loops = smooth(&d, &s).unwrap();
        let g = state_graph(&d, &s).unwrap();
        assert_eq!(g.vertex_count, loops.count());
        assert_eq!(g.edges.len(), 3);
    }

    #[test]
    fn kink_states_differ_by_one_loop() {
        let d = standard::kink();
        let plus = smooth(&d, &State::all_plus(1)).unwrap().count() as i64;
        let minus = smooth(&d, &State::all_minus(1)).unwrap().count() as i64;
        assert_eq!((plus - minus).abs(), 1);
        // Either state graph has a self-loop.
        for s in [State::all_plus(1), State::all_minus(1)] {
            let g = state_graph(&d, &s).unwrap();
            let has_loop = g.edges.iter().any(|e| e.is_loop());
            let check = check_state(&d, &s).unwrap();
            assert_eq!(has_loop, !check.adequate);
        }
        assert!(!check_state(&d, &State::all_plus(1)).unwrap().adequate
            || !check_state(&d, &State::all_minus(1)).unwrap().adequate);
    }

    #[test]
    fn kink_moebius_state_is_nonorientable() {
        let d = standard::kink();
        // One of the two states yields a single loop: a Moebius band.
        for s in [State::all_plus(1), State::all_minus(1)] {
            let loops = smooth(&d, &s).unwrap();
            let summary = surface_summary(&d, &s).unwrap();
            if loops.count() == 1 {
                assert!(!summary.orientable);
                assert_eq!(summary.euler_characteristic, 0);
            } else {
                assert!(summary.orientable);
                assert_eq!(summary.euler_characteristic, 1);
            }
        }
    }

    #[test]
    fn seifert_surface_orientable_slope_zero() {
        for d in [standard::trefoil(), standard::figure8()] {
            let o = d.canonical_orientation();
            let s = seifert_state(&d, &o);
            let summary = surface_summary(&d, &s).unwrap();
            assert!(summary.orientable);
            assert_eq!(summary.boundary_slope, Some(0));
            let check = check_state(&d, &s).unwrap();
            assert!(check.is_seifert);
        }
    }

    #[test]
    fn trefoil_checkerboard_moebius_slope() {
        let d = standard::trefoil();
        let s = State::all_minus(3);
        let summary = surface_summary(&d, &s).unwrap();
        assert!(!summary.orientable);
        assert_eq!(summary.euler_characteristic, 0);
        assert_eq!(summary.boundary_slope, Some(6));
        assert_eq!(summary.genus, 1); // crosscap number of the Moebius band
    }

    #[test]
    fn figure8_checkerboard_slopes() {
        let d = standard::figure8();
        let plus = surface_summary(&d, &State::all_plus(4)).unwrap();
        let minus = surface_summary(&d, &State::all_minus(4)).unwrap();
        let mut slopes = [plus.boundary_slope.unwrap(), minus.boundary_slope.unwrap()];
        slopes.sort_unstable();
        assert_eq!(slopes, [-4, 4]);
        assert!(!plus.orientable);
        assert!(!minus.orientable);
    }

    #[test]
    fn figure8_example_state() {
        let d = standard::figure8();
        let s = State::parse("--++").unwrap();
        let check = check_state(&d, &s).unwrap();
        assert!(check.adequate);
        assert!(check.homogeneous);
        // This state is the Seifert state of the diagram: its surface is the
        // genus-one Seifert surface, the plumbing of a negative and a
        // positive clasp.
        assert!(check.is_seifert);
        let g = state_graph(&d, &s).unwrap();
        assert!(g.edges.iter().all(|e| !e.is_loop()));
        assert_eq!(g.blocks.len(), 2);
        for b in &g.blocks {
            assert_eq!(b.len(), 2);
            assert_eq!(s.signs[b[0]], s.signs[b[1]]);
        }
        // The adequate homogeneous states that are not Seifert are the two
        // checkerboard states.
        for cb in [State::all_plus(4), State::all_minus(4)] {
            let c = check_state(&d, &cb).unwrap();
            assert!(c.adequate && c.homogeneous && !c.is_seifert);
        }
    }

    #[test]
    fn figure8_murasugi_leaves() {
        let d = standard::figure8();
        let s = State::parse("--++").unwrap();
        let leaves = murasugi_leaves(&d, &s).unwrap();
        assert_eq!(leaves.len(), 2);
        let mut signs: Vec<i8> = Vec::new();
        for leaf in &leaves {
            assert_eq!(leaf.diagram.crossing_count(), 2);
            assert!(leaf.diagram.is_alternating());
            assert!(leaf.diagram.is_reduced());
            assert!(leaf.diagram.is_prime().unwrap());
            assert_eq!(leaf.state.signs[0], leaf.state.signs[1]);
            signs.push(leaf.state.signs[0]);
        }
        signs.sort_unstable();
        assert_eq!(signs, vec![-1, 1]);
    }

    #[test]
    fn single_block_leaf_is_identity() {
        let d = standard::trefoil();
        let s = State::all_plus(3);
        let leaves = murasugi_leaves(&d, &s).unwrap();
        assert_eq!(leaves.len(), 1);
        assert_eq!(leaves[0].diagram.crossing_count(), 3);
        assert_eq!(leaves[0].state, s);
    }

    #[test]
    fn leaf_euler_additivity() {
        // Sum of leaf Euler characteristics = chi(whole) + (#blocks - 1).
        let d = standard::figure8();
        for mask in 0..16u64 {
            let s = State::from_mask(mask, 4);
            let whole = surface_summary(&d, &s).unwrap().euler_characteristic;
            let leaves = murasugi_leaves(&d, &s).unwrap();
            let sum: i64 = leaves
                .iter()
                .map(|l| {
                    surface_summary(&l.diagram, &l.state)
                        .unwrap()
                        .euler_characteristic
                })
                .sum();
            assert_eq!(sum, whole + leaves.len() as i64 - 1);
        }
    }

    #[test]
    fn enumerate_counts() {
        let d = standard::trefoil();
        let all: Vec<_> = enumerate_states(&d, 16, |_, _| true).unwrap().collect();
        assert_eq!(all.len(), 8);
        let unknot = Diagram::unknot();
        let states: Vec<_> = enumerate_states(&unknot, 16, |_, _| true).unwrap().collect();
        assert_eq!(states.len(), 1);
        assert!(states[0].is_empty());
        let big = standard::figure8();
        assert!(matches!(
            enumerate_states(&big, 3, |_, _| true),
            Err(StateError::CapExceeded(4, 3))
        ));
    }

    #[test]
    fn mirror_flips_seifert_state() {
        let d = standard::figure8();
        let o = d.canonical_orientation();
        let s = seifert_state(&d, &o);
        let m = d.mirror();
        let om = m.canonical_orientation();
        let sm = seifert_state(&m, &om);
        assert_eq!(sm, s.negated());
    }

    #[test]
    fn sigma_pm_always_homogeneous() {
        for d in [standard::trefoil(), standard::figure8()] {
            for s in [State::all_plus(d.crossing_count()), State::all_minus(d.crossing_count())] {
                assert!(check_state(&d, &s).unwrap().homogeneous);
            }
        }
    }

    #[test]
    fn orientable_iff_seifert() {
        for d in [standard::trefoil(), standard::figure8(), standard::kink()] {
            let n = d.crossing_count();
            for mask in 0..(1u64 << n) {
                let s = State::from_mask(mask, n);
                let summary = surface_summary(&d, &s).unwrap();
                let check = check_state(&d, &s).unwrap();
                assert_eq!(summary.orientable, check.is_seifert, "{d:?} {s}");
            }
        }
    }

    #[test]
    fn disk_side_choice_does_not_change_invariants() {
        let d = standard::figure8();
        for mask in 0..16u64 {
            let s = State::from_mask(mask, 4);
            let loops = smooth(&d, &s).unwrap();
            let base = surface_summary(&d, &s).unwrap();
            for sides_mask in 0..(1u32 << loops.loops.len()) {
                let sides: Vec<bool> =
                    (0..loops.loops.len()).map(|i| sides_mask >> i & 1 == 1).collect();
                let alt = surface_summary_with_sides(&d, &s, Some(&sides)).unwrap();
                assert_eq!(base, alt);
            }
        }
    }
}
