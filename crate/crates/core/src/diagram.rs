//! Knot and link diagrams on the 2-sphere as PD-coded 4-valent plane graphs.
//!
//! A diagram is a set of crossings, each with four cyclically ordered slots
//! (the rotation system), wired together by edges (strand arcs).  Slot
//! conventions, fixed once and used everywhere:
//!
//! * the PD tuple `X(a,b,c,d)` lists the edges at slots `0..4` in
//!   counterclockwise order;
//! * the under-strand passes through slots 0 and 2, the over-strand through
//!   slots 1 and 3 (so slot parity is the strand level);
//! * in a traversal-labelled code, slot 0 holds the incoming under-strand.
//!
//! With an orientation, a crossing is positive exactly when the over-strand
//! enters at slot `u + 1 (mod 4)` where `u` is the entering under slot.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use thiserror::Error;

pub type CrossingId = usize;
pub type EdgeId = usize;

/// One of the four strand-end positions at a crossing.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct End {
    pub crossing: CrossingId,
    pub slot: u8,
}

impl End {
    pub fn new(crossing: CrossingId, slot: u8) -> Self {
        End { crossing, slot }
    }
}

#[derive(Clone, Debug)]
pub struct Crossing {
    /// Edge at each slot, counterclockwise.
    pub slots: [EdgeId; 4],
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub ends: [End; 2],
    /// PD strand label, kept for round-trip serialization.
    pub label: usize,
}

impl Edge {
    fn other(&self, end: End) -> End {
        if self.ends[0] == end {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed PD tuple: {0}")]
    Malformed(String),
    #[error("strand label {0} appears {1} times (expected 2)")]
    BadLabelCount(usize, usize),
    #[error("underlying 4-valent graph is disconnected")]
    Disconnected,
    #[error("rotation system is not planar (V - E + F = {0}, expected 2)")]
    NotPlanar(i64),
    #[error("diagram has no crossings")]
    NoCrossings,
    #[error("diagram must be a knot (found {0} components)")]
    NotAKnot(usize),
    #[error("no legal Reidemeister III triangle at face {0}")]
    NoTriangle(usize),
}

/// A connected knot or link diagram on the 2-sphere.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub crossings: Vec<Crossing>,
    pub edges: Vec<Edge>,
    /// Closed strand components that meet no crossing.  Never produced by the
    /// parser; partial smoothing can create them.
    pub free_loops: usize,
    pub name: Option<String>,
}

/// Direction assignment for every edge of a diagram, one choice per link
/// component.
#[derive(Clone, Debug)]
pub struct Orientation {
    /// `head[e]` is the index (0 or 1) into `edges[e].ends` the edge points at.
    pub head: Vec<u8>,
}

impl Orientation {
    pub fn head_end(&self, d: &Diagram, e: EdgeId) -> End {
        d.edges[e].ends[self.head[e] as usize]
    }
    pub fn tail_end(&self, d: &Diagram, e: EdgeId) -> End {
        d.edges[e].ends[1 - self.head[e] as usize]
    }
    /// True when the edge at this end points into the crossing.
    pub fn enters_at(&self, d: &Diagram, end: End) -> bool {
        let e = d.crossings[end.crossing].slots[end.slot as usize];
        self.head_end(d, e) == end
    }
}

impl Diagram {
    /// The 0-crossing diagram of the unknot.
    pub fn unknot() -> Self {
        Diagram {
            crossings: Vec::new(),
            edges: Vec::new(),
            free_loops: 1,
            name: None,
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_at(&self, end: End) -> EdgeId {
        self.crossings[end.crossing].slots[end.slot as usize]
    }

    pub fn other_end(&self, end: End) -> End {
        self.edges[self.edge_at(end)].other(end)
    }

    /// Parse whitespace-separated `X(a,b,c,d)` tuples.
    ///
    /// Two label schemes are accepted: the usual arc labels (every label on
    /// exactly two slots), and endpoint stamps `1..4n` each appearing once,
    /// where stamp `2k` joins stamp `2k+1 (mod 4n)` by an arc.
    pub fn parse_pd(text: &str) -> Result<Self, DiagramError> {
        let tuples = parse_tuples(text)?;
        if tuples.is_empty() {
            return Err(DiagramError::Malformed("empty PD code".into()));
        }
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for t in &tuples {
            for &l in t {
                *counts.entry(l).or_insert(0) += 1;
            }
        }
        let all_twice = counts.values().all(|&c| c == 2);
        let all_once = counts.values().all(|&c| c == 1);
        let occurrences: Vec<(usize, End)> = if all_twice {
            tuples
                .iter()
                .enumerate()
                .flat_map(|(c, t)| {
                    t.iter()
                        .enumerate()
                        .map(move |(s, &l)| (l, End::new(c, s as u8)))
                })
                .collect()
        } else if all_once {
            // Endpoint-stamp scheme: stamps 1..4n, arcs 2k -> 2k+1.
            let m = 4 * tuples.len();
            if counts.len() != m || counts.keys().last() != Some(&m) || !counts.contains_key(&1) {
                return Err(DiagramError::Malformed(
                    "endpoint stamps must be 1..4n each exactly once".into(),
                ));
            }
            let mut at: BTreeMap<usize, End> = BTreeMap::new();
            for (c, t) in tuples.iter().enumerate() {
                for (s, &l) in t.iter().enumerate() {
                    at.insert(l, End::new(c, s as u8));
                }
            }
            (1..=m / 2)
                .flat_map(|k| {
                    let a = 2 * k;
                    let b = if 2 * k + 1 > m { 1 } else { 2 * k + 1 };
                    [(k, at[&a]), (k, at[&b])]
                })
                .collect()
        } else {
            let (l, c) = counts.iter().find(|&(_, &c)| c != 2).unwrap();
            return Err(DiagramError::BadLabelCount(*l, *c));
        };

        let mut by_label: BTreeMap<usize, Vec<End>> = BTreeMap::new();
        for (l, end) in occurrences {
            by_label.entry(l).or_default().push(end);
        }
        let mut edges = Vec::new();
        let mut crossings: Vec<Crossing> = tuples
            .iter()
            .map(|_| Crossing { slots: [usize::MAX; 4] })
            .collect();
        for (label, ends) in by_label {
            debug_assert_eq!(ends.len(), 2);
            let id = edges.len();
            edges.push(Edge {
                ends: [ends[0], ends[1]],
                label,
            });
            for end in ends {
                crossings[end.crossing].slots[end.slot as usize] = id;
            }
        }
        let d = Diagram {
            crossings,
            edges,
            free_loops: 0,
            name: None,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Structural validation: full slot coverage, connectivity, planarity.
    pub fn validate(&self) -> Result<(), DiagramError> {
        for (c, x) in self.crossings.iter().enumerate() {
            for (s, &e) in x.slots.iter().enumerate() {
                if e >= self.edges.len() {
                    return Err(DiagramError::Malformed(format!(
                        "crossing {c} slot {s} unset"
                    )));
                }
                let end = End::new(c, s as u8);
                if !self.edges[e].ends.contains(&end) {
                    return Err(DiagramError::Malformed(format!(
                        "edge {e} does not record end {end:?}"
                    )));
                }
            }
        }
        if !self.crossings.is_empty() {
            // Connectivity of the 4-valent graph.
            let mut seen = vec![false; self.crossings.len()];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(c) = stack.pop() {
                for s in 0..4 {
                    let o = self.other_end(End::new(c, s)).crossing;
                    if !seen[o] {
                        seen[o] = true;
                        stack.push(o);
                    }
                }
            }
            if !seen.iter().all(|&b| b) {
                return Err(DiagramError::Disconnected);
            }
            let v = self.crossings.len() as i64;
            let e = self.edges.len() as i64;
            let f = self.faces().len() as i64;
            if v - e + f != 2 {
                return Err(DiagramError::NotPlanar(v - e + f));
            }
        }
        Ok(())
    }

    /// Serialize back to `X(a,b,c,d)` tuples using the stored labels.
    pub fn to_pd_string(&self) -> String {
        let mut out = String::new();
        for (i, x) in self.crossings.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let l: Vec<String> = x
                .slots
                .iter()
                .map(|&e| self.edges[e].label.to_string())
                .collect();
            let _ = write!(out, "X({})", l.join(","));
        }
        out
    }

    /// Faces of the rotation system.  Each face is its cyclic corner list;
    /// corner `(c, s)` occupies the quadrant between slots `s-1` and `s`.
    pub fn faces(&self) -> Vec<Vec<End>> {
        let mut seen: BTreeSet<End> = BTreeSet::new();
        let mut faces = Vec::new();
        for c in 0..self.crossings.len() {
            for s in 0..4u8 {
                let start = End::new(c, s);
                if seen.contains(&start) {
                    continue;
                }
                let mut face = Vec::new();
                let mut cur = start;
                loop {
                    face.push(cur);
                    seen.insert(cur);
                    let far = self.other_end(cur);
                    cur = End::new(far.crossing, (far.slot + 1) % 4);
                    if cur == start {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Face index at every corner, aligned with `faces()`.
    pub fn face_at_corner(&self) -> BTreeMap<End, usize> {
        let mut face_at = BTreeMap::new();
        for (i, f) in self.faces().iter().enumerate() {
            for &end in f {
                face_at.insert(end, i);
            }
        }
        face_at
    }

    /// Checkerboard coloring of the faces; `true` ("black") is the color of
    /// `faces()[0]`.  The faces adjacent to an edge are the faces holding its
    /// two end corners, and they always admit a proper 2-coloring on the
    /// sphere.
    pub fn face_two_coloring(&self) -> Vec<bool> {
        let faces = self.faces();
        let face_at = self.face_at_corner();
        let mut color: Vec<Option<bool>> = vec![None; faces.len()];
        if faces.is_empty() {
            return Vec::new();
        }
        color[0] = Some(true);
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            let c = color[i].unwrap();
            for &end in &faces[i] {
                let e = &self.edges[self.edge_at(end)];
                let sides = [face_at[&e.ends[0]], face_at[&e.ends[1]]];
                debug_assert!(sides.contains(&i));
                for j in sides {
                    if j == i {
                        continue;
                    }
                    match color[j] {
                        None => {
                            color[j] = Some(!c);
                            stack.push(j);
                        }
                        Some(cj) => debug_assert_ne!(cj, c, "faces not checkerboard colorable"),
                    }
                }
            }
        }
        color.into_iter().map(|c| c.expect("connected face graph")).collect()
    }

    /// Link components (through-strand orbits), each as an edge sequence in
    /// traversal order starting at its smallest-labelled edge.
    pub fn components(&self) -> Vec<Vec<EdgeId>> {
        let mut all = Vec::new();
        let mut seen = vec![false; self.edges.len()];
        let mut order: Vec<EdgeId> = (0..self.edges.len()).collect();
        order.sort_by_key(|&e| self.edges[e].label);
        for e0 in order {
            if seen[e0] {
                continue;
            }
            let mut comp = Vec::new();
            // Walk "forward": leave e0 through ends[1].
            let mut end = self.edges[e0].ends[1];
            let mut e = e0;
            loop {
                comp.push(e);
                seen[e] = true;
                let through = End::new(end.crossing, (end.slot + 2) % 4);
                e = self.edge_at(through);
                end = self.edges[e].other(through);
                if e == e0 {
                    break;
                }
            }
            all.push(comp);
        }
        all
    }

    pub fn component_count(&self) -> usize {
        self.components().len() + self.free_loops
    }

    /// Canonical orientation.  Each component is directed so that, where
    /// possible, its strand enters slot 0 crossings as the incoming
    /// under-strand; components that never pass under are directed away from
    /// the lexicographically smallest end of their smallest edge.
    pub fn canonical_orientation(&self) -> Orientation {
        let mut head = vec![0u8; self.edges.len()];
        for comp in self.components() {
            // Walk the component in the "ends[1] of first edge" direction,
            // recording each edge's head under that walk.
            let e0 = comp[0];
            let mut dir: BTreeMap<EdgeId, u8> = BTreeMap::new();
            let mut end = self.edges[e0].ends[1];
            let mut e = e0;
            loop {
                dir.insert(e, if self.edges[e].ends[1] == end { 1 } else { 0 });
                let through = End::new(end.crossing, (end.slot + 2) % 4);
                e = self.edge_at(through);
                end = self.edges[e].other(through);
                if e == e0 {
                    break;
                }
            }
            // Flip the walk if it violates the slot-0 convention.
            let mut flip = false;
            'find: for &e in &comp {
                for end in self.edges[e].ends {
                    if end.slot == 0 {
                        let enters = self.edges[e].ends[dir[&e] as usize] == end;
                        flip = !enters;
                        break 'find;
                    }
                }
            }
            for (&e, &h) in &dir {
                head[e] = if flip { 1 - h } else { h };
            }
        }
        Orientation { head }
    }

    /// All `2^components` orientations (component-wise flips of the canonical
    /// one), canonical first.
    pub fn all_orientations(&self) -> Vec<Orientation> {
        let comps = self.components();
        let base = self.canonical_orientation();
        let mut out = Vec::new();
        for mask in 0..(1usize << comps.len()) {
            let mut o = base.clone();
            for (i, comp) in comps.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for &e in comp {
                        o.head[e] = 1 - o.head[e];
                    }
                }
            }
            out.push(o);
        }
        out
    }

    /// Sign of a crossing under an orientation: +1 when the over-strand
    /// enters one slot counterclockwise from the entering under slot.
    pub fn crossing_sign(&self, o: &Orientation, c: CrossingId) -> i8 {
        let under_in = if o.enters_at(self, End::new(c, 0)) { 0 } else { 2 };
        let over_in = if o.enters_at(self, End::new(c, 1)) { 1 } else { 3 };
        if over_in == (under_in + 1) % 4 {
            1
        } else {
            -1
        }
    }

    pub fn writhe(&self, o: &Orientation) -> i64 {
        (0..self.crossings.len())
            .map(|c| self.crossing_sign(o, c) as i64)
            .sum()
    }

    /// True when every edge has one over end and one under end.
    pub fn is_alternating(&self) -> bool {
        self.edges
            .iter()
            .all(|e| (e.ends[0].slot % 2) != (e.ends[1].slot % 2))
    }

    /// A diagram is reduced when no face meets the same crossing twice
    /// (no nugatory crossing).
    pub fn is_reduced(&self) -> bool {
        self.faces().iter().all(|f| {
            let mut cs: Vec<_> = f.iter().map(|end| end.crossing).collect();
            cs.sort_unstable();
            cs.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// A diagram is prime when no pair of edges disconnects the underlying
    /// 4-valent graph with crossings on both sides.
    pub fn is_prime(&self) -> Result<bool, DiagramError> {
        if self.crossings.is_empty() {
            return Err(DiagramError::NoCrossings);
        }
        if self.crossings.len() == 1 {
            return Ok(true);
        }
        for e1 in 0..self.edges.len() {
            for e2 in e1 + 1..self.edges.len() {
                let mut seen = vec![false; self.crossings.len()];
                let mut stack = vec![0usize];
                seen[0] = true;
                let mut reached = 1;
                while let Some(c) = stack.pop() {
                    for s in 0..4 {
                        let e = self.edge_at(End::new(c, s));
                        if e == e1 || e == e2 {
                            continue;
                        }
                        let o = self.other_end(End::new(c, s)).crossing;
                        if !seen[o] {
                            seen[o] = true;
                            reached += 1;
                            stack.push(o);
                        }
                    }
                }
                if reached < self.crossings.len() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Mirror image: swap strand levels at every crossing, keeping the
    /// rotation system.
    pub fn mirror(&self) -> Diagram {
        let crossings = self
            .crossings
            .iter()
            .map(|x| Crossing {
                slots: [x.slots[1], x.slots[2], x.slots[3], x.slots[0]],
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                ends: [
                    End::new(e.ends[0].crossing, (e.ends[0].slot + 3) % 4),
                    End::new(e.ends[1].crossing, (e.ends[1].slot + 3) % 4),
                ],
                label: e.label,
            })
            .collect();
        Diagram {
            crossings,
            edges,
            free_loops: self.free_loops,
            name: self.name.clone(),
        }
    }

    /// Relabel edges by an arbitrary injective map (test helper for
    /// relabelling invariance).
    pub fn relabeled(&self, f: impl Fn(usize) -> usize) -> Diagram {
        let mut d = self.clone();
        for e in &mut d.edges {
            e.label = f(e.label);
        }
        d
    }

    /// Faces that are triangles with three distinct crossings and a legal
    /// Reidemeister III configuration (some side runs over both or under both
    /// of its crossings).
    pub fn r3_candidates(&self) -> Vec<usize> {
        self.faces()
            .iter()
            .enumerate()
            .filter(|(_, f)| self.r3_same_level_side(f).is_some())
            .map(|(i, _)| i)
            .collect()
    }

    fn r3_same_level_side(&self, face: &[End]) -> Option<usize> {
        if face.len() != 3 {
            return None;
        }
        let cs: BTreeSet<_> = face.iter().map(|end| end.crossing).collect();
        if cs.len() != 3 {
            return None;
        }
        // Side i is the edge left from corner i; its levels are the slot
        // parities at its two ends.
        (0..3).find(|&i| {
            let e = self.edge_at(face[i]);
            let [a, b] = self.edges[e].ends;
            (a.slot % 2) == (b.slot % 2)
        })
    }

    /// Apply a Reidemeister III move across the given face (index into
    /// `faces()`).
    pub fn apply_r3(&self, face_index: usize) -> Result<Diagram, DiagramError> {
        let faces = self.faces();
        let face = faces
            .get(face_index)
            .ok_or(DiagramError::NoTriangle(face_index))?;
        let side = self
            .r3_same_level_side(face)
            .ok_or(DiagramError::NoTriangle(face_index))?;

        // The sliding strand runs along edge `el` between crossings A and B;
        // C is the third crossing of the triangle.
        let el = self.edge_at(face[side]);
        let (a, b) = (
            self.edges[el].ends[0].crossing,
            self.edges[el].ends[1].crossing,
        );
        let c = face
            .iter()
            .map(|end| end.crossing)
            .find(|&x| x != a && x != b)
            .unwrap();

        let mut slots: Vec<[EdgeId; 4]> = self.crossings.iter().map(|x| x.slots).collect();

        // Triangle slots at a crossing: each corner (c,s) touches slots s-1, s.
        let tri_slots = |cr: CrossingId| -> Vec<u8> {
            let mut v = Vec::new();
            for end in face {
                if end.crossing == cr {
                    v.push((end.slot + 3) % 4);
                    v.push(end.slot);
                }
            }
            v.sort_unstable();
            v.dedup();
            v
        };

        let locate = |cr: CrossingId| -> (u8, u8) {
            // (slot of el, slot of the other triangle edge) at crossing `cr`.
            let ts = tri_slots(cr);
            let sl_el = *ts
                .iter()
                .find(|&&s| self.crossings[cr].slots[s as usize] == el)
                .unwrap();
            let sl_tri = *ts
                .iter()
                .find(|&&s| self.crossings[cr].slots[s as usize] != el)
                .unwrap();
            (sl_el, sl_tri)
        };
        let (a_el, a_tri) = locate(a);
        let (b_el, b_tri) = locate(b);
        let e2 = slots[a][a_tri as usize]; // triangle edge A-C
        let e3 = slots[b][b_tri as usize]; // triangle edge B-C
        let ts_c = tri_slots(c);
        let c_2 = *ts_c
            .iter()
            .find(|&&s| self.crossings[c].slots[s as usize] == e2)
            .unwrap();
        let c_3 = *ts_c
            .iter()
            .find(|&&s| self.crossings[c].slots[s as usize] == e3)
            .unwrap();
        let c_2f = (c_2 + 2) % 4;
        let c_3f = (c_3 + 2) % 4;
        let a_far = (a_tri + 2) % 4;
        let b_far = (b_tri + 2) % 4;

        let r_edge = slots[a][a_far as usize];
        let s_edge = slots[c][c_2f as usize];
        let t_edge = slots[b][b_far as usize];
        let u_edge = slots[c][c_3f as usize];

        // Reflect each triangle attachment across the sliding strand.
        let new_a_tri = (2 * a_el as i32 - a_tri as i32).rem_euclid(4) as usize;
        let new_b_tri = (2 * b_el as i32 - b_tri as i32).rem_euclid(4) as usize;
        slots[a][new_a_tri] = e3;
        slots[a][(new_a_tri + 2) % 4] = u_edge;
        slots[b][new_b_tri] = e2;
        slots[b][(new_b_tri + 2) % 4] = s_edge;
        slots[c][c_2 as usize] = r_edge;
        slots[c][c_2f as usize] = e2;
        slots[c][c_3 as usize] = t_edge;
        slots[c][c_3f as usize] = e3;

        // Rebuild edge endpoints from the slot arrays.
        let mut occurrences: BTreeMap<EdgeId, Vec<End>> = BTreeMap::new();
        for (ci, sl) in slots.iter().enumerate() {
            for (si, &e) in sl.iter().enumerate() {
                occurrences.entry(e).or_default().push(End::new(ci, si as u8));
            }
        }
        let mut edges = self.edges.clone();
        for (e, ends) in occurrences {
            if ends.len() != 2 {
                return Err(DiagramError::Malformed(format!(
                    "R3 rewiring left edge {e} with {} ends",
                    ends.len()
                )));
            }
            edges[e].ends = [ends[0], ends[1]];
        }
        let d = Diagram {
            crossings: slots.into_iter().map(|s| Crossing { slots: s }).collect(),
            edges,
            free_loops: self.free_loops,
            name: self.name.clone(),
        };
        d.validate()?;
        Ok(d)
    }
}

fn parse_tuples(text: &str) -> Result<Vec<[usize; 4]>, DiagramError> {
    let mut tuples = Vec::new();
    let cleaned = text.replace(['\n', '\t'], " ");
    let mut rest = cleaned.trim();
    while !rest.is_empty() {
        let Some(open) = rest.find('(') else {
            return Err(DiagramError::Malformed(rest.into()));
        };
        let head = rest[..open].trim();
        if !head.eq_ignore_ascii_case("x") {
            return Err(DiagramError::Malformed(format!("expected X(...), got {head}")));
        }
        let Some(close) = rest.find(')') else {
            return Err(DiagramError::Malformed("unclosed tuple".into()));
        };
        let body = &rest[open + 1..close];
        let parts: Vec<_> = body.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(DiagramError::Malformed(format!("X({body})")));
        }
        let mut t = [0usize; 4];
        for (i, p) in parts.iter().enumerate() {
            t[i] = p
                .parse::<usize>()
                .map_err(|_| DiagramError::Malformed(format!("bad label {p}")))?;
            if t[i] == 0 {
                return Err(DiagramError::Malformed("labels start at 1".into()));
            }
        }
        tuples.push(t);
        rest = rest[close + 1..].trim_start();
    }
    Ok(tuples)
}

/// Bundled PD codes used across the crate and its tests.
pub mod standard {
    use super::Diagram;

    /// Right-handed trefoil, writhe +3.
    pub fn trefoil() -> Diagram {
        Diagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)")
            .unwrap()
            .with_name("3_1")
    }

    /// Figure-eight knot.  Crossings 0,1 form the negative twist region and
    /// 2,3 the positive one.
    pub fn figure8() -> Diagram {
        Diagram::parse_pd("X(8,4,1,3) X(4,8,5,7) X(2,5,3,6) X(6,1,7,2)")
            .unwrap()
            .with_name("4_1")
    }

    /// One-crossing kink (endpoint-stamp PD).
    pub fn kink() -> Diagram {
        Diagram::parse_pd("X(1,4,2,3)").unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kink_parses_with_three_faces() {
        let d = standard::kink();
        assert_eq!(d.crossing_count(), 1);
        let mut sizes: Vec<_> = d.faces().iter().map(|f| f.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2]);
        assert!(!d.is_reduced());
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn trefoil_euler_and_faces() {
        let d = standard::trefoil();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.edges.len(), 6);
        assert_eq!(d.faces().len(), 5);
        assert_eq!(d.component_count(), 1);
        assert!(d.is_reduced());
        assert!(d.is_prime().unwrap());
        assert!(d.is_alternating());
    }

    #[test]
    fn trefoil_is_positive() {
        let d = standard::trefoil();
        let o = d.canonical_orientation();
        assert_eq!(d.writhe(&o), 3);
        for c in 0..3 {
            assert_eq!(d.crossing_sign(&o, c), 1);
        }
    }

    #[test]
    fn figure8_basics() {
        let d = standard::figure8();
        assert_eq!(d.faces().len(), 6);
        assert_eq!(d.component_count(), 1);
        assert!(d.is_alternating());
        assert!(d.is_reduced());
        assert!(d.is_prime().unwrap());
        let o = d.canonical_orientation();
        assert_eq!(d.writhe(&o), 0);
    }

    #[test]
    fn pd_round_trip() {
        let text = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
        let d = Diagram::parse_pd(text).unwrap();
        assert_eq!(d.to_pd_string(), text);
        let d2 = Diagram::parse_pd(&d.to_pd_string()).unwrap();
        assert_eq!(d2.to_pd_string(), text);
    }

    #[test]
    fn rejects_bad_codes() {
        assert!(Diagram::parse_pd("").is_err());
        assert!(Diagram::parse_pd("X(1,2,3)").is_err());
        assert!(matches!(
            Diagram::parse_pd("X(1,1,1,2)"),
            Err(DiagramError::BadLabelCount(..))
        ));
        // Two disjoint kinks: disconnected.
        assert!(matches!(
            Diagram::parse_pd("X(1,2,2,1) X(3,4,4,3)"),
            Err(DiagramError::Disconnected)
        ));
    }

    #[test]
    fn mirror_swaps_signs() {
        let d = standard::trefoil();
        let m = d.mirror();
        m.validate().unwrap();
        let o = m.canonical_orientation();
        assert_eq!(m.writhe(&o), -3);
        assert!(m.is_alternating());
    }

    #[test]
    fn prime_rejects_connected_sum() {
        // Granny knot: trefoil # trefoil through a 2-cut.
        let text = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
        let d = Diagram::parse_pd(text).unwrap();
        let sum = connected_sum(&d, &d);
        assert_eq!(sum.crossing_count(), 6);
        assert!(sum.is_reduced());
        assert!(!sum.is_prime().unwrap());
    }

    /// Splice two knot diagrams along arbitrary chosen edges (test helper).
    fn connected_sum(a: &Diagram, b: &Diagram) -> Diagram {
        let na = a.edges.len();
        let mut crossings = a.crossings.clone();
        let shift = a.crossings.len();
        for x in &b.crossings {
            crossings.push(Crossing {
                slots: [
                    x.slots[0] + na,
                    x.slots[1] + na,
                    x.slots[2] + na,
                    x.slots[3] + na,
                ],
            });
        }
        let mut edges = a.edges.clone();
        for e in &b.edges {
            edges.push(Edge {
                ends: [
                    End::new(e.ends[0].crossing + shift, e.ends[0].slot),
                    End::new(e.ends[1].crossing + shift, e.ends[1].slot),
                ],
                label: e.label + na,
            });
        }
        // Cut edge 0 of each and cross-join: a0 keeps its ends[0], gains b0's
        // ends[1]; b0 keeps its ends[0] (shifted), gains a0's ends[1].
        let a0e1 = edges[0].ends[1];
        let b0 = na;
        let b0e1 = edges[b0].ends[1];
        edges[0].ends[1] = b0e1;
        edges[b0].ends[1] = a0e1;
        let mut slots: Vec<[EdgeId; 4]> = crossings.iter().map(|x| x.slots).collect();
        slots[b0e1.crossing][b0e1.slot as usize] = 0;
        slots[a0e1.crossing][a0e1.slot as usize] = b0;
        let d = Diagram {
            crossings: slots.into_iter().map(|s| Crossing { slots: s }).collect(),
            edges,
            free_loops: 0,
            name: None,
        };
        d.validate().unwrap();
        d
    }
}
