//! Rational-tangle presentations and diagram synthesis.
//!
//! Montesinos and pretzel presentations are exact-rational data; diagrams
//! are synthesized from them with a fixed planar layout (tangles summed left
//! to right, then the numerator closure).  A rational tangle is built from
//! its standard single-sign twist word; the outermost term twists
//! horizontally, and stages alternate inward, so the word evaluates to the
//! continued fraction implemented in [`crate::fraction`].

use crate::diagram::{Crossing, Diagram, DiagramError, Edge, End};
use crate::fraction::{frac, standard_cf, ContinuedFraction, Fraction, FractionError};
use crate::state::{checkerboard_states, State};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TangleError {
    #[error("slope {0} is not allowed here")]
    BadSlope(String),
    #[error("presentation needs at least one tangle")]
    Empty,
    #[error("cannot parse presentation: {0}")]
    Parse(String),
    #[error("deplumbing needs a normalized presentation with exactly one negative slope")]
    DeplumbForm,
    #[error("weighted graph invalid: {0}")]
    Graph(String),
    #[error(transparent)]
    Fraction(#[from] FractionError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

macro_rules! fmt_list {
    ($letter:literal, $field:ident) => {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{}(", $letter)?;
            for (i, x) in self.$field.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x)?;
            }
            write!(f, ")")
        }
    };
}

/// `M(r_1, ..., r_n)`: a cyclic sum of rational tangles.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MontesinosPresentation {
    pub slopes: Vec<Fraction>,
}

impl MontesinosPresentation {
    pub fn new(slopes: Vec<Fraction>) -> Result<Self, TangleError> {
        if slopes.is_empty() {
            return Err(TangleError::Empty);
        }
        if slopes.iter().any(|r| r.is_zero()) {
            return Err(TangleError::BadSlope("0".into()));
        }
        Ok(MontesinosPresentation { slopes })
    }

    pub fn r_minus(&self) -> usize {
        self.slopes.iter().filter(|r| r.is_negative()).count()
    }

    pub fn r_plus(&self) -> usize {
        self.slopes.len() - self.r_minus()
    }

    pub fn mirrored(&self) -> Self {
        MontesinosPresentation {
            slopes: self.slopes.iter().map(Fraction::neg).collect(),
        }
    }

    /// Total slope; `prod(denominators) * sum(slopes)` is the determinant of
    /// the closure.
    pub fn total_slope(&self) -> Fraction {
        let mut t = Fraction::from_int(0);
        for r in &self.slopes {
            t = t.add(r);
        }
        t
    }

    pub fn parse(text: &str) -> Result<Self, TangleError> {
        let inner = strip_wrapper(text, 'M').ok_or_else(|| TangleError::Parse(text.into()))?;
        let slopes = inner
            .split(',')
            .map(parse_fraction)
            .collect::<Result<Vec<_>, _>>()?;
        MontesinosPresentation::new(slopes)
    }
}

impl fmt::Display for MontesinosPresentation {
    fmt_list!('M', slopes);
}

/// `P(p_1, ..., p_n)`: the Montesinos form with slopes `1/p_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PretzelPresentation {
    pub twists: Vec<i64>,
}

impl PretzelPresentation {
    pub fn new(twists: Vec<i64>) -> Result<Self, TangleError> {
        if twists.is_empty() {
            return Err(TangleError::Empty);
        }
        if twists.contains(&0) {
            return Err(TangleError::BadSlope("0".into()));
        }
        Ok(PretzelPresentation { twists })
    }

    pub fn to_montesinos(&self) -> MontesinosPresentation {
        MontesinosPresentation {
            slopes: self.twists.iter().map(|&p| frac(1, p)).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, TangleError> {
        let inner = strip_wrapper(text, 'P').ok_or_else(|| TangleError::Parse(text.into()))?;
        let twists = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| TangleError::Parse(t.into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        PretzelPresentation::new(twists)
    }
}

impl fmt::Display for PretzelPresentation {
    fmt_list!('P', twists);
}

fn strip_wrapper(text: &str, letter: char) -> Option<&str> {
    let t = text.trim();
    let mut chars = t.chars();
    if !chars.next()?.eq_ignore_ascii_case(&letter) {
        return None;
    }
    let rest = chars.as_str().trim_start();
    rest.strip_prefix('(')?.strip_suffix(')')
}

fn parse_fraction(t: &str) -> Result<Fraction, TangleError> {
    let t = t.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: i64 = num.parse().map_err(|_| TangleError::Parse(t.into()))?;
    let den: i64 = den.parse().map_err(|_| TangleError::Parse(t.into()))?;
    Fraction::new(num, den).map_err(TangleError::from)
}

/// Proper-slope normal form: integer parts absorbed (integer-slope tangles
/// drop out), mirrored so negative slopes are not the majority, and
/// rotated/reflected so negatives lead.  The allowed moves are integer
/// transfer between tangles, cyclic rotation, reversal, and global mirror.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub slopes: Vec<Fraction>,
    /// Leftover integer tangle; nonzero only when the total slope cannot be
    /// spread over proper fractions.
    pub framing: i64,
    pub mirrored: bool,
    /// Fewer than three tangles remain, so the 2-bridge route applies.
    pub two_bridge: bool,
}

impl Normalized {
    pub fn presentation(&self) -> Result<MontesinosPresentation, TangleError> {
        MontesinosPresentation::new(self.slopes.clone())
    }

    pub fn r_minus(&self) -> usize {
        self.slopes.iter().filter(|r| r.is_negative()).count()
    }
}

pub fn normalize_montesinos(m: &MontesinosPresentation) -> Result<Normalized, TangleError> {
    let total = m.total_slope();
    // Fractional parts in (0,1); integer-slope tangles drop out.
    let fracs: Vec<Fraction> = m
        .slopes
        .iter()
        .filter(|r| !r.is_integer())
        .map(|r| r.sub(&Fraction::from_big(r.floor(), BigInt::one()).unwrap()))
        .collect();
    let n = fracs.len();
    let mut sum_f = Fraction::from_int(0);
    for f in &fracs {
        sum_f = sum_f.add(f);
    }
    // k tangles take the representative f-1; k = sum(f) - total when in
    // range, otherwise a framing remains.
    let k_exact = sum_f.sub(&total);
    debug_assert!(k_exact.is_integer());
    let k = k_exact.floor();
    let (mut slopes, framing, mut mirrored) = if !k.is_negative() && k <= BigInt::from(n) {
        let k = k.to_usize().unwrap();
        // Deterministic choice: shift the k largest fractional parts.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| fracs[b].cmp(&fracs[a]).then(a.cmp(&b)));
        let one = Fraction::from_int(1);
        let mut slopes = fracs.clone();
        for &i in order.iter().take(k) {
            slopes[i] = fracs[i].sub(&one);
        }
        (slopes, 0i64, false)
    } else {
        // Keep all representatives positive and carry a framing, mirroring
        // if that makes the framing positive.
        let e = total.sub(&sum_f).floor();
        if e.is_negative() {
            let mirrored_fracs: Vec<Fraction> = fracs
                .iter()
                .map(|f| Fraction::from_int(1).sub(f))
                .collect();
            let mut s = Fraction::from_int(0);
            for f in &mirrored_fracs {
                s = s.add(f);
            }
            let e2 = total.neg().sub(&s).floor();
            (mirrored_fracs, e2.to_i64().expect("framing fits i64"), true)
        } else {
            (fracs, e.to_i64().expect("framing fits i64"), false)
        }
    };
    let neg = slopes.iter().filter(|r| r.is_negative()).count();
    if framing == 0 && 2 * neg > slopes.len() {
        for r in &mut slopes {
            *r = r.neg();
        }
        mirrored = !mirrored;
    }
    let slopes = dihedral_canonical(&slopes);
    let two_bridge = slopes.len() < 3;
    Ok(Normalized {
        slopes,
        framing,
        mirrored,
        two_bridge,
    })
}

/// Canonical representative under rotation and reversal: longest leading run
/// of negative slopes, then the lexicographically smallest sequence.
fn dihedral_canonical(slopes: &[Fraction]) -> Vec<Fraction> {
    let n = slopes.len();
    if n == 0 {
        return Vec::new();
    }
    let mut best: Option<Vec<Fraction>> = None;
    for start in 0..n {
        let fwd: Vec<Fraction> = (0..n).map(|i| slopes[(start + i) % n].clone()).collect();
        let rev: Vec<Fraction> = (0..n)
            .map(|i| slopes[(start + n - i) % n].clone())
            .collect();
        for cand in [fwd, rev] {
            let lead = cand.iter().take_while(|r| r.is_negative()).count();
            let better = match &best {
                None => true,
                Some(b) => {
                    let blead = b.iter().take_while(|r| r.is_negative()).count();
                    lead > blead || (lead == blead && cand < *b)
                }
            };
            if better {
                best = Some(cand);
            }
        }
    }
    best.unwrap()
}

/// The pretzel minor a checkerboard surface of `M(-r1, r2, ..., rn)`
/// deplumbs to: `P(-ceil(1/r1), ceil(1/r2), ..., ceil(1/rn))`.
pub fn deplumb_to_pretzel(norm: &Normalized) -> Result<PretzelPresentation, TangleError> {
    let one = Fraction::from_int(1);
    let in_unit = |r: &Fraction| !r.is_zero() && r.abs().cmp_abs_one() == std::cmp::Ordering::Less;
    let _ = one;
    if norm.framing != 0
        || norm.slopes.len() < 3
        || norm.r_minus() != 1
        || !norm.slopes[0].is_negative()
        || !norm.slopes.iter().all(in_unit)
    {
        return Err(TangleError::DeplumbForm);
    }
    let mut twists = Vec::with_capacity(norm.slopes.len());
    for (i, r) in norm.slopes.iter().enumerate() {
        let p = r.abs().recip()?.ceil();
        let p = p.to_i64().expect("twist fits i64");
        twists.push(if i == 0 { -p } else { p });
    }
    PretzelPresentation::new(twists)
}

/// A synthesized diagram with its two checkerboard states (black first,
/// where black is the color of face 0).
pub struct Built {
    pub diagram: Diagram,
    pub checkerboards: (State, State),
    /// Crossing ranges of the summed tangles, in presentation order.
    pub tangle_spans: Vec<std::ops::Range<usize>>,
    /// Crossing ranges of maximal twist runs.
    pub twist_groups: Vec<std::ops::Range<usize>>,
}

// --- tangle assembly -------------------------------------------------------

/// Wires are edges under construction; a union-find merges them when tangles
/// are summed or closed.
struct Assembler {
    parent: Vec<usize>,
    slots: Vec<[usize; 4]>,
    /// Crossing ranges of maximal twist runs, in construction order.
    twist_groups: Vec<std::ops::Range<usize>>,
}

/// Corner wires of a partial tangle.
#[derive(Clone, Copy)]
struct Corners {
    nw: usize,
    ne: usize,
    sw: usize,
    se: usize,
}

impl Assembler {
    fn new() -> Self {
        Assembler {
            parent: Vec::new(),
            slots: Vec::new(),
            twist_groups: Vec::new(),
        }
    }

    fn fresh(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, w: usize) -> usize {
        if self.parent[w] != w {
            let root = self.find(self.parent[w]);
            self.parent[w] = root;
        }
        self.parent[w]
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// The 0-tangle: two horizontal strands.
    fn zero_tangle(&mut self) -> Corners {
        let top = self.fresh();
        let bottom = self.fresh();
        Corners {
            nw: top,
            ne: top,
            sw: bottom,
            se: bottom,
        }
    }

    /// The infinity tangle: two vertical strands.
    fn infinity_tangle(&mut self) -> Corners {
        let left = self.fresh();
        let right = self.fresh();
        Corners {
            nw: left,
            sw: left,
            ne: right,
            se: right,
        }
    }

    /// `k` horizontal twists on the east side (slope moves by +k).
    fn add_right_twists(&mut self, mut t: Corners, k: i64) -> Corners {
        let start = self.slots.len();
        for _ in 0..k.unsigned_abs() {
            let n_top = self.fresh();
            let n_bottom = self.fresh();
            // Positions: NW = old NE wire, SW = old SE, NE/SE = new wires.
            let sl = if k > 0 {
                [t.se, n_bottom, n_top, t.ne]
            } else {
                [t.ne, t.se, n_bottom, n_top]
            };
            self.slots.push(sl);
            t.ne = n_top;
            t.se = n_bottom;
        }
        if self.slots.len() > start {
            self.twist_groups.push(start..self.slots.len());
        }
        t
    }

    /// `k` vertical twists on the south side (slope moves to 1/(k + 1/r)).
    fn add_bottom_twists(&mut self, mut t: Corners, k: i64) -> Corners {
        let start = self.slots.len();
        for _ in 0..k.unsigned_abs() {
            let n_left = self.fresh();
            let n_right = self.fresh();
            // Positions: NW = old SW wire, NE = old SE, SW/SE = new wires.
            let sl = if k > 0 {
                [n_left, n_right, t.se, t.sw]
            } else {
                [t.sw, n_left, n_right, t.se]
            };
            self.slots.push(sl);
            t.sw = n_left;
            t.se = n_right;
        }
        if self.slots.len() > start {
            self.twist_groups.push(start..self.slots.len());
        }
        t
    }

    /// Standard-form rational tangle for a twist word.
    fn rational_tangle(&mut self, cf: &ContinuedFraction) -> Corners {
        let k = cf.terms.len();
        // Stage j (1-based) twists horizontally exactly when k - j is even.
        let mut t = if k % 2 == 1 {
            self.zero_tangle()
        } else {
            self.infinity_tangle()
        };
        for (j, &a) in cf.terms.iter().enumerate() {
            let horizontal = (k - (j + 1)) % 2 == 0;
            t = if horizontal {
                self.add_right_twists(t, a)
            } else {
                self.add_bottom_twists(t, a)
            };
        }
        t
    }

    /// Horizontal tangle sum.
    fn sum(&mut self, a: Corners, b: Corners) -> Corners {
        self.merge(a.ne, b.nw);
        self.merge(a.se, b.sw);
        Corners {
            nw: a.nw,
            ne: b.ne,
            sw: a.sw,
            se: b.se,
        }
    }

    /// Numerator closure into a diagram.
    fn close(&mut self, t: Corners) -> Result<Diagram, TangleError> {
        self.merge(t.nw, t.ne);
        self.merge(t.sw, t.se);
        self.into_diagram()
    }

    fn into_diagram(&mut self) -> Result<Diagram, TangleError> {
        if self.slots.is_empty() {
            return Err(TangleError::BadSlope("no crossings".into()));
        }
        let resolved: Vec<[usize; 4]> = (0..self.slots.len())
            .map(|c| {
                let sl = self.slots[c];
                [
                    self.find(sl[0]),
                    self.find(sl[1]),
                    self.find(sl[2]),
                    self.find(sl[3]),
                ]
            })
            .collect();
        let mut occurrences: Vec<Vec<End>> = vec![Vec::new(); self.parent.len()];
        for (c, sl) in resolved.iter().enumerate() {
            for (s, &w) in sl.iter().enumerate() {
                occurrences[w].push(End::new(c, s as u8));
            }
        }
        let mut edge_of_wire = vec![usize::MAX; self.parent.len()];
        let mut edges = Vec::new();
        for (w, ends) in occurrences.iter().enumerate() {
            match ends.len() {
                0 => continue,
                2 => {
                    edge_of_wire[w] = edges.len();
                    edges.push(Edge {
                        ends: [ends[0], ends[1]],
                        label: edges.len() + 1,
                    });
                }
                k => {
                    return Err(TangleError::Graph(format!(
                        "wire resolved to {k} endpoints"
                    )))
                }
            }
        }
        let crossings = resolved
            .iter()
            .map(|sl| Crossing {
                slots: [
                    edge_of_wire[sl[0]],
                    edge_of_wire[sl[1]],
                    edge_of_wire[sl[2]],
                    edge_of_wire[sl[3]],
                ],
            })
            .collect();
        let d = Diagram {
            crossings,
            edges,
            free_loops: 0,
            name: None,
        };
        d.validate()?;
        Ok(d)
    }
}

/// Diagram of the numerator closure of a single rational tangle.
pub fn build_rational(cf: &ContinuedFraction) -> Result<Built, TangleError> {
    let mut asm = Assembler::new();
    let t = asm.rational_tangle(cf);
    let span = 0..asm.slots.len();
    let diagram = asm.close(t)?;
    let checkerboards = checkerboard_states(&diagram);
    Ok(Built {
        diagram,
        checkerboards,
        tangle_spans: vec![span],
        twist_groups: asm.twist_groups,
    })
}

/// Diagram of `M(r_1, ..., r_n)`: standard-form tangles summed left to
/// right, then closed.
pub fn build_montesinos(m: &MontesinosPresentation) -> Result<Built, TangleError> {
    let mut asm = Assembler::new();
    let mut acc: Option<Corners> = None;
    let mut tangle_spans = Vec::new();
    for r in &m.slopes {
        let cf = standard_cf(r)?;
        let start = asm.slots.len();
        let t = asm.rational_tangle(&cf);
        tangle_spans.push(start..asm.slots.len());
        acc = Some(match acc {
            None => t,
            Some(a) => asm.sum(a, t),
        });
    }
    let t = acc.ok_or(TangleError::Empty)?;
    let diagram = asm.close(t)?.with_name(m.to_string());
    let checkerboards = checkerboard_states(&diagram);
    Ok(Built {
        diagram,
        checkerboards,
        tangle_spans,
        twist_groups: asm.twist_groups,
    })
}

pub fn build_pretzel(p: &PretzelPresentation) -> Result<Built, TangleError> {
    let mut built = build_montesinos(&p.to_montesinos())?;
    built.diagram.name = Some(p.to_string());
    Ok(built)
}

// --- weighted planar graphs --------------------------------------------------

/// A planar multigraph with integer edge weights and an explicit rotation
/// system.  Replacing vertices by disks and edges by weighted twist bands
/// yields a checkerboard surface and its boundary link.
#[derive(Clone, Debug)]
pub struct WeightedPlanarGraph {
    pub vertex_count: usize,
    /// `(u, v, weight)`.
    pub edges: Vec<(usize, usize, i64)>,
    /// Counterclockwise order of edge ends around each vertex, as
    /// `(edge index, end)` where end 0 is at `u`.  Self-loops appear twice.
    pub rotations: Vec<Vec<(usize, u8)>>,
}

impl WeightedPlanarGraph {
    /// Two vertices joined by parallel weighted edges; `theta(&[p,q,r])`
    /// carries the pretzel surface of `P(p,q,r)`.
    pub fn theta(weights: &[i64]) -> Self {
        let n = weights.len();
        WeightedPlanarGraph {
            vertex_count: 2,
            edges: weights.iter().map(|&w| (0, 1, w)).collect(),
            rotations: vec![
                (0..n).map(|i| (i, 0)).collect(),
                (0..n).rev().map(|i| (i, 1)).collect(),
            ],
        }
    }

    pub fn validate(&self) -> Result<(), TangleError> {
        if self.edges.iter().any(|&(_, _, w)| w == 0) {
            return Err(TangleError::Graph("zero weight".into()));
        }
        if self.rotations.len() != self.vertex_count {
            return Err(TangleError::Graph("rotation count".into()));
        }
        let mut seen = vec![0usize; self.edges.len()];
        for (v, rot) in self.rotations.iter().enumerate() {
            for &(e, end) in rot {
                let Some(&(u0, v0, _)) = self.edges.get(e) else {
                    return Err(TangleError::Graph(format!("bad edge index {e}")));
                };
                let expect = if end == 0 { u0 } else { v0 };
                if expect != v {
                    return Err(TangleError::Graph(format!("edge {e} end {end} not at {v}")));
                }
                seen[e] += 1;
            }
        }
        if seen.iter().any(|&c| c != 2) {
            return Err(TangleError::Graph("each edge end must appear once".into()));
        }
        let f = self.graph_faces();
        let euler = self.vertex_count as i64 - self.edges.len() as i64 + f as i64;
        if euler != 2 {
            return Err(TangleError::Graph(format!("euler {euler}")));
        }
        Ok(())
    }

    /// Face count of the rotation system.
    fn graph_faces(&self) -> usize {
        let pos: std::collections::BTreeMap<(usize, u8), (usize, usize)> = self
            .rotations
            .iter()
            .enumerate()
            .flat_map(|(v, rot)| {
                rot.iter()
                    .enumerate()
                    .map(move |(i, &(e, end))| ((e, end), (v, i)))
            })
            .collect();
        let darts: Vec<(usize, u8)> = self
            .edges
            .iter()
            .enumerate()
            .flat_map(|(e, _)| [(e, 0u8), (e, 1)])
            .collect();
        let mut visited: std::collections::BTreeSet<(usize, u8)> = Default::default();
        let mut faces = 0;
        for &start in &darts {
            if visited.contains(&start) {
                continue;
            }
            faces += 1;
            let mut cur = start;
            loop {
                visited.insert(cur);
                let twin = (cur.0, 1 - cur.1);
                let (v, i) = pos[&twin];
                let rot = &self.rotations[v];
                cur = rot[(i + 1) % rot.len()];
                if cur == start {
                    break;
                }
            }
        }
        faces
    }

    /// Connected with no cut vertex.
    pub fn is_two_connected(&self) -> bool {
        if self.vertex_count <= 1 {
            return true;
        }
        let reachable = |skip: Option<usize>| -> usize {
            let start = (0..self.vertex_count).find(|&v| Some(v) != skip).unwrap();
            let mut seen = vec![false; self.vertex_count];
            seen[start] = true;
            let mut stack = vec![start];
            let mut count = 1;
            while let Some(v) = stack.pop() {
                for &(a, b, _) in &self.edges {
                    for (x, y) in [(a, b), (b, a)] {
                        if x == v && Some(y) != skip && !seen[y] {
                            seen[y] = true;
                            count += 1;
                            stack.push(y);
                        }
                    }
                }
            }
            count
        };
        if reachable(None) != self.vertex_count {
            return false;
        }
        self.vertex_count == 2
            || (0..self.vertex_count).all(|v| reachable(Some(v)) == self.vertex_count - 1)
    }

    /// Text format: `vertices N`, then `edge u v w` lines, then optional
    /// `rot v e0 e1 ...` lines giving edge indices counterclockwise around
    /// each vertex (self-loops listed twice).  Without `rot` lines a default
    /// nesting is chosen.
    pub fn parse(text: &str) -> Result<Self, TangleError> {
        let mut vertex_count = None;
        let mut edges = Vec::new();
        let mut rot_lines: Vec<(usize, Vec<usize>)> = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            match it.next().unwrap() {
                "vertices" => {
                    vertex_count = Some(
                        it.next()
                            .and_then(|t| t.parse().ok())
                            .ok_or_else(|| TangleError::Parse(line.into()))?,
                    )
                }
                "edge" => {
                    let nums: Vec<i64> = it
                        .map(|t| t.parse().map_err(|_| TangleError::Parse(line.into())))
                        .collect::<Result<_, _>>()?;
                    if nums.len() != 3 {
                        return Err(TangleError::Parse(line.into()));
                    }
                    edges.push((nums[0] as usize, nums[1] as usize, nums[2]));
                }
                "rot" => {
                    let nums: Vec<usize> = it
                        .map(|t| t.parse().map_err(|_| TangleError::Parse(line.into())))
                        .collect::<Result<_, _>>()?;
                    if nums.is_empty() {
                        return Err(TangleError::Parse(line.into()));
                    }
                    rot_lines.push((nums[0], nums[1..].to_vec()));
                }
                _ => return Err(TangleError::Parse(line.into())),
            }
        }
        let vertex_count = vertex_count.ok_or_else(|| TangleError::Parse("no vertices".into()))?;
        let rotations = if rot_lines.is_empty() {
            default_rotations(vertex_count, &edges)
        } else {
            let mut rotations = vec![Vec::new(); vertex_count];
            for (v, list) in rot_lines {
                if v >= vertex_count {
                    return Err(TangleError::Parse(format!("rot vertex {v}")));
                }
                let mut used: std::collections::BTreeMap<usize, u8> = Default::default();
                let mut rot = Vec::new();
                for e in list {
                    let count = used.entry(e).or_insert(0);
                    let (u0, v0, _) = edges
                        .get(e)
                        .copied()
                        .ok_or_else(|| TangleError::Parse(format!("edge {e}")))?;
                    let end = if u0 == v && (v0 != v || *count == 0) { 0 } else { 1 };
                    *count += 1;
                    rot.push((e, end));
                }
                rotations[v] = rot;
            }
            rotations
        };
        let g = WeightedPlanarGraph {
            vertex_count,
            edges,
            rotations,
        };
        g.validate()?;
        Ok(g)
    }
}

fn default_rotations(vertex_count: usize, edges: &[(usize, usize, i64)]) -> Vec<Vec<(usize, u8)>> {
    let mut rotations: Vec<Vec<(usize, u8)>> = vec![Vec::new(); vertex_count];
    for (e, &(u, v, _)) in edges.iter().enumerate() {
        rotations[u].push((e, 0));
        rotations[v].push((e, 1));
    }
    // Reverse the far-end order so parallel bundles embed planarly.
    for rot in &mut rotations {
        let (zeros, ones): (Vec<_>, Vec<_>) = rot.iter().partition(|&&(_, end)| end == 0);
        let mut v = zeros;
        v.extend(ones.into_iter().rev());
        *rot = v;
    }
    rotations
}

/// Replace each vertex by a disk and each edge by a band with `w` half
/// twists; the boundary is the synthesized diagram and the disks-and-bands
/// surface is one of its checkerboard surfaces.
pub fn build_weighted_graph(g: &WeightedPlanarGraph) -> Result<Built, TangleError> {
    g.validate()?;
    let mut asm = Assembler::new();
    // Column per edge: wires (top-left, top-right, bottom-left,
    // bottom-right) in the band's own frame; end 0 is the top.
    let mut columns = Vec::new();
    for &(_, _, w) in &g.edges {
        let tl = asm.fresh();
        let tr = asm.fresh();
        let (mut l, mut r) = (tl, tr);
        let start = asm.slots.len();
        for _ in 0..w.unsigned_abs() {
            let nl = asm.fresh();
            let nr = asm.fresh();
            let sl = if w > 0 {
                [nl, nr, r, l]
            } else {
                [l, nl, nr, r]
            };
            asm.slots.push(sl);
            l = nl;
            r = nr;
        }
        if asm.slots.len() > start {
            asm.twist_groups.push(start..asm.slots.len());
        }
        columns.push((tl, tr, l, r));
    }
    // Rim arcs: around each vertex connect each band end's second point to
    // the next band end's first point (counterclockwise).  At the top of a
    // column (first, second) = (top-right, top-left); at the bottom,
    // (bottom-left, bottom-right).
    for rot in &g.rotations {
        for i in 0..rot.len() {
            let (e1, end1) = rot[i];
            let (e2, end2) = rot[(i + 1) % rot.len()];
            let second = match end1 {
                0 => columns[e1].0, // top-left
                _ => columns[e1].3, // bottom-right
            };
            let first = match end2 {
                0 => columns[e2].1, // top-right
                _ => columns[e2].2, // bottom-left
            };
            asm.merge(second, first);
        }
    }
    let spans = columns
        .iter()
        .enumerate()
        .map(|(e, _)| {
            let before: usize = g.edges[..e]
                .iter()
                .map(|&(_, _, w)| w.unsigned_abs() as usize)
                .sum();
            before..before + g.edges[e].2.unsigned_abs() as usize
        })
        .collect();
    let diagram = asm.into_diagram()?;
    let checkerboards = checkerboard_states(&diagram);
    Ok(Built {
        diagram,
        checkerboards,
        tangle_spans: spans,
        twist_groups: asm.twist_groups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::determinant;

    fn det_of(m: &MontesinosPresentation) -> i128 {
        determinant(&build_montesinos(m).unwrap().diagram)
    }

    fn expected_det(m: &MontesinosPresentation) -> i128 {
        let mut prod = BigInt::one();
        for r in &m.slopes {
            prod *= r.denom();
        }
        let t = m.total_slope();
        let v = (prod * t.numer()) / t.denom();
        v.abs().to_i128().unwrap()
    }

    #[test]
    fn montesinos_parse_display() {
        let m = MontesinosPresentation::parse("M(3/7,-1/2,1/3)").unwrap();
        assert_eq!(m.slopes, vec![frac(3, 7), frac(-1, 2), frac(1, 3)]);
        assert_eq!(m.to_string(), "M(3/7,-1/2,1/3)");
        assert_eq!(m.r_minus(), 1);
        let p = PretzelPresentation::parse("P(-2,3,7)").unwrap();
        assert_eq!(p.twists, vec![-2, 3, 7]);
        assert!(MontesinosPresentation::parse("M(0,1/2)").is_err());
        assert!(PretzelPresentation::parse("P()").is_err());
    }

    #[test]
    fn single_column_closes_to_unknot() {
        // One pretzel column capped by the two rims unwinds: the numerator
        // closure of a 1/p tangle is the unknot.
        let built = build_pretzel(&PretzelPresentation::new(vec![3]).unwrap()).unwrap();
        let d = &built.diagram;
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(determinant(d), 1);
    }

    #[test]
    fn horizontal_twists_close_to_torus_diagram() {
        let built = build_rational(&ContinuedFraction::new(vec![3])).unwrap();
        let d = &built.diagram;
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(determinant(d), 3);
    }

    #[test]
    fn mixed_word_has_the_right_determinant() {
        // (1,1) evaluates to 2: the Hopf link, determinant 2.
        let built = build_rational(&ContinuedFraction::new(vec![1, 1])).unwrap();
        assert_eq!(determinant(&built.diagram), 2);
        assert_eq!(built.diagram.component_count(), 2);
        // (3,2,4) evaluates to 31/7.
        let built = build_rational(&ContinuedFraction::new(vec![3, 2, 4])).unwrap();
        assert_eq!(built.diagram.crossing_count(), 9);
        assert_eq!(determinant(&built.diagram), 31);
    }

    #[test]
    fn montesinos_determinants() {
        for (text, crossings) in [
            ("M(1/2,1/2)", 4),
            ("M(1/3,-2/3)", 6),
            ("M(-1/2,1/3,1/3)", 8),
            ("M(-1/2,1/3,1/5)", 10),
            ("M(3/7,-1/2,1/3)", 10),
            ("M(1/3,-3/4,1/3)", 10),
            ("M(1/3,1/3,1/3)", 9),
            ("M(-2/5,2/7,1/3)", 12),
        ] {
            let m = MontesinosPresentation::parse(text).unwrap();
            let built = build_montesinos(&m).unwrap();
            assert_eq!(built.diagram.crossing_count(), crossings, "{text}");
            assert_eq!(det_of(&m), expected_det(&m), "{text}");
        }
    }

    #[test]
    fn montesinos_expected_invariants() {
        for (text, det, comps) in [
            ("M(-1/2,1/3,1/3)", 3, 1),
            ("M(3/7,-1/2,1/3)", 11, 1),
            ("M(1/3,-3/4,1/3)", 3, 1),
            ("M(-1/2,1/3,1/5)", 1, 1),
            ("M(1/2,1/2)", 4, 2),
        ] {
            let m = MontesinosPresentation::parse(text).unwrap();
            let b = build_montesinos(&m).unwrap();
            assert_eq!(determinant(&b.diagram), det, "{text}");
            assert_eq!(b.diagram.component_count(), comps, "{text}");
        }
    }

    #[test]
    fn positive_structure_of_r_minus_one_diagrams() {
        // With one negative proper tangle and the rest positive, these
        // synthesized diagrams are positive diagrams.
        for text in ["M(-1/2,1/3,1/3)", "M(-1/2,1/3,1/5)", "M(3/7,-1/2,1/3)"] {
            let m = MontesinosPresentation::parse(text).unwrap();
            let d = build_montesinos(&m).unwrap().diagram;
            let o = d.canonical_orientation();
            let all_positive = (0..d.crossing_count()).all(|c| d.crossing_sign(&o, c) == 1);
            assert!(all_positive, "{text} writhe {}", d.writhe(&o));
        }
    }

    #[test]
    fn normalization_examples() {
        let m = MontesinosPresentation::parse("M(10/3,-1/2,1/3)").unwrap();
        let n = normalize_montesinos(&m).unwrap();
        assert!(n.slopes.iter().all(|r| r.abs().cmp_abs_one() == std::cmp::Ordering::Less));
        if n.framing == 0 {
            let mut t = Fraction::from_int(0);
            for r in &n.slopes {
                t = t.add(r);
            }
            let expect = if n.mirrored {
                m.total_slope().neg()
            } else {
                m.total_slope()
            };
            assert_eq!(t, expect);
        }

        let m = MontesinosPresentation::parse("M(-1/2,-1/3,1/3,1/5)").unwrap();
        let n = normalize_montesinos(&m).unwrap();
        assert!(2 * n.r_minus() <= n.slopes.len());

        let m = MontesinosPresentation::parse("M(3/7,-1/2,1/3)").unwrap();
        let n = normalize_montesinos(&m).unwrap();
        assert!(!n.mirrored);
        assert_eq!(n.framing, 0);
        assert_eq!(n.slopes[0], frac(-1, 2));
        assert_eq!(n.r_minus(), 1);
        assert!(!n.two_bridge);

        let m = MontesinosPresentation::parse("M(5/3,-2/3)").unwrap();
        let n = normalize_montesinos(&m).unwrap();
        assert!(n.two_bridge);
    }

    #[test]
    fn deplumb_examples() {
        let cases = [
            ("M(-1/2,1/3,1/5)", vec![-2, 3, 5]),
            ("M(-1/2,2/5,1/3)", vec![-2, 3, 3]),
            ("M(-2/5,2/7,1/3)", vec![-3, 4, 3]),
        ];
        for (text, want) in cases {
            let m = MontesinosPresentation::parse(text).unwrap();
            let n = normalize_montesinos(&m).unwrap();
            let p = deplumb_to_pretzel(&n).unwrap();
            let mut got = p.twists.clone();
            let mut expect = want;
            got[1..].sort_unstable();
            expect[1..].sort_unstable();
            assert_eq!(got, expect, "{text}");
        }
        // Ceilings are at least 2 on proper slopes.
        let m = MontesinosPresentation::parse("M(-8/9,7/8,6/7)").unwrap();
        let n = normalize_montesinos(&m).unwrap();
        if n.r_minus() == 1 {
            let p = deplumb_to_pretzel(&n).unwrap();
            assert!(p.twists.iter().all(|&t| t.abs() >= 2));
        }
    }

    #[test]
    fn pretzel_crossing_count() {
        for twists in [vec![-2, 3, 5], vec![3, 3, 3], vec![-4, 3, 3], vec![2, -2, 4]] {
            let p = PretzelPresentation::new(twists.clone()).unwrap();
            let b = build_pretzel(&p).unwrap();
            let want: usize = twists.iter().map(|t| t.unsigned_abs() as usize).sum();
            assert_eq!(b.diagram.crossing_count(), want);
        }
    }

    #[test]
    fn theta_graph_matches_pretzel() {
        let g = WeightedPlanarGraph::theta(&[-2, 3, 5]);
        g.validate().unwrap();
        assert!(g.is_two_connected());
        let from_graph = build_weighted_graph(&g).unwrap();
        let from_pretzel =
            build_pretzel(&PretzelPresentation::new(vec![-2, 3, 5]).unwrap()).unwrap();
        assert_eq!(
            from_graph.diagram.crossing_count(),
            from_pretzel.diagram.crossing_count()
        );
        assert_eq!(
            determinant(&from_graph.diagram),
            determinant(&from_pretzel.diagram)
        );
        assert!(crate::oracle::bracket_equivalent(
            &from_graph.diagram,
            &from_pretzel.diagram
        ));
    }

    #[test]
    fn weighted_self_loop_is_torus_link() {
        // A weight-n band from a disk to itself has the (2,n) torus link as
        // its boundary.
        let g = WeightedPlanarGraph {
            vertex_count: 1,
            edges: vec![(0, 0, 4)],
            rotations: vec![vec![(0, 0), (0, 1)]],
        };
        let b = build_weighted_graph(&g).unwrap();
        assert_eq!(b.diagram.crossing_count(), 4);
        assert_eq!(b.diagram.component_count(), 2);
        assert_eq!(determinant(&b.diagram), 4);
        let g3 = WeightedPlanarGraph {
            vertex_count: 1,
            edges: vec![(0, 0, 3)],
            rotations: vec![vec![(0, 0), (0, 1)]],
        };
        let b3 = build_weighted_graph(&g3).unwrap();
        assert_eq!(b3.diagram.component_count(), 1);
        assert_eq!(determinant(&b3.diagram), 3);
        // A weight-n band joining two distinct disks untwists instead.
        let g2 = WeightedPlanarGraph {
            vertex_count: 2,
            edges: vec![(0, 1, 4)],
            rotations: vec![vec![(0, 0)], vec![(0, 1)]],
        };
        let b2 = build_weighted_graph(&g2).unwrap();
        assert_eq!(determinant(&b2.diagram), 1);
    }

    #[test]
    fn graph_parser_round_trip() {
        let text = "vertices 2\nedge 0 1 3\nedge 0 1 3\nedge 0 1 3\nrot 0 0 1 2\nrot 1 2 1 0\n";
        let g = WeightedPlanarGraph::parse(text).unwrap();
        assert_eq!(g.edges.len(), 3);
        let b = build_weighted_graph(&g).unwrap();
        assert_eq!(b.diagram.crossing_count(), 9);
        assert_eq!(
            determinant(&b.diagram),
            expected_det(&MontesinosPresentation::parse("M(1/3,1/3,1/3)").unwrap())
        );
    }
}
