//! Readers for traversal-based knot codes: Dowker-Thistlethwaite and signed
//! Gauss codes, realized as PD diagrams.
//!
//! DT convention: passages are numbered `1..2n` along the knot; crossing `i`
//! pairs the odd passage `2i-1` with the even passage `|a_i|`, and `a_i > 0`
//! means the odd passage runs under.  A DT code determines the rotation
//! system only up to choices; with at most one choice per crossing, the
//! planar ones are found by exhaustive search and a prime code admits
//! exactly one mirror pair.

use crate::diagram::{Crossing, Diagram, DiagramError, Edge, End};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("DT code entries must pair odd passages with even ones: {0}")]
    BadPairing(String),
    #[error("code is not realizable as a knot diagram on the sphere")]
    NotRealizable,
    #[error("Gauss code malformed: {0}")]
    BadGauss(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Realize a DT code (one signed even entry per crossing).
///
/// Returns the lexicographically first planar resolution; prime codes have
/// exactly one up to mirror image.
pub fn realize_dt(code: &[i64]) -> Result<Diagram, CodeError> {
    let n = code.len();
    if n == 0 {
        return Err(CodeError::BadPairing("empty code".into()));
    }
    let two_n = 2 * n as i64;
    let mut partner = vec![0usize; 2 * n + 1]; // passage -> passage
    let mut under_odd = vec![false; n];
    let mut seen_even = vec![false; n + 1];
    for (i, &a) in code.iter().enumerate() {
        let e = a.unsigned_abs() as usize;
        if a == 0 || a.abs() > two_n || e % 2 != 0 || seen_even[e / 2] {
            return Err(CodeError::BadPairing(format!("entry {a}")));
        }
        seen_even[e / 2] = true;
        let odd = 2 * i + 1;
        partner[odd] = e;
        partner[e] = odd;
        under_odd[i] = a > 0;
    }
    // Crossing of each passage, and whether the passage runs under.
    let mut crossing_of = vec![0usize; 2 * n + 1];
    let mut under_at = vec![false; 2 * n + 1];
    for i in 0..n {
        let odd = 2 * i + 1;
        let even = partner[odd];
        crossing_of[odd] = i;
        crossing_of[even] = i;
        under_at[odd] = under_odd[i];
        under_at[even] = !under_odd[i];
    }
    realize_passages(n, &crossing_of, &under_at, None)
}

/// Realize a signed Gauss code written as tokens `O<k><sign>` / `U<k><sign>`,
/// e.g. `O1+U2+O3-U1+O2+U3-`.  Signs are crossing signs; they pin the
/// rotation at each crossing, so realization only checks planarity.
pub fn realize_gauss(text: &str) -> Result<Diagram, CodeError> {
    let mut tokens: Vec<(bool, usize, i8)> = Vec::new(); // (is_over, crossing label, sign)
    let mut chars = text.chars().filter(|c| !c.is_whitespace()).peekable();
    while let Some(c) = chars.next() {
        let is_over = match c.to_ascii_uppercase() {
            'O' => true,
            'U' => false,
            _ => return Err(CodeError::BadGauss(format!("unexpected {c}"))),
        };
        let mut num = String::new();
        while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
            num.push(*d);
            chars.next();
        }
        let label: usize = num
            .parse()
            .map_err(|_| CodeError::BadGauss("missing crossing number".into()))?;
        let sign = match chars.next() {
            Some('+') => 1,
            Some('-') => -1,
            other => return Err(CodeError::BadGauss(format!("expected sign, got {other:?}"))),
        };
        tokens.push((is_over, label, sign));
    }
    if tokens.len() % 2 != 0 {
        return Err(CodeError::BadGauss("odd token count".into()));
    }
    let n = tokens.len() / 2;
    let mut label_to_id: Vec<(usize, usize)> = Vec::new();
    let mut crossing_of = vec![0usize; 2 * n + 1];
    let mut under_at = vec![false; 2 * n + 1];
    let mut signs = vec![0i8; n];
    for (pos, &(is_over, label, sign)) in tokens.iter().enumerate() {
        let id = match label_to_id.iter().find(|&&(l, _)| l == label) {
            Some(&(_, id)) => id,
            None => {
                let id = label_to_id.len();
                label_to_id.push((label, id));
                id
            }
        };
        if id >= n {
            return Err(CodeError::BadGauss("too many distinct crossings".into()));
        }
        crossing_of[pos + 1] = id;
        under_at[pos + 1] = !is_over;
        if signs[id] != 0 && signs[id] != sign {
            return Err(CodeError::BadGauss(format!("crossing {label} sign mismatch")));
        }
        signs[id] = sign;
    }
    for id in 0..n {
        let count = (1..=2 * n).filter(|&p| crossing_of[p] == id).count();
        if count != 2 {
            return Err(CodeError::BadGauss(format!("crossing appears {count} times")));
        }
        let unders = (1..=2 * n)
            .filter(|&p| crossing_of[p] == id && under_at[p])
            .count();
        if unders != 1 {
            return Err(CodeError::BadGauss("crossing must have one over and one under pass".into()));
        }
    }
    realize_passages(n, &crossing_of, &under_at, Some(&signs))
}

/// Shared realization: passages `1..2n` with crossing ids and under flags.
/// If `signs` is given, the rotation at each crossing is forced (the passage
/// orientation is the traversal order); otherwise all `2^n` rotations are
/// searched for a planar one.
fn realize_passages(
    n: usize,
    crossing_of: &[usize],
    under_at: &[bool],
    signs: Option<&[i8]>,
) -> Result<Diagram, CodeError> {
    let build = |rot: u64| -> Diagram {
        // Arc t runs from passage t to passage t+1 (arc 2n wraps to 1).
        // At crossing c: under passage u: in at slot 0, out at slot 2.
        // Over passage o: in at slot 1 for rotation bit 0 (positive-style),
        // in at slot 3 otherwise.
        let mut slots = vec![[usize::MAX; 4]; n];
        for p in 1..=2 * n {
            let c = crossing_of[p];
            let arc_in = if p == 1 { 2 * n } else { p - 1 };
            let arc_out = p;
            let (slot_in, slot_out) = if under_at[p] {
                (0usize, 2usize)
            } else if rot >> c & 1 == 0 {
                (1, 3)
            } else {
                (3, 1)
            };
            slots[c][slot_in] = arc_in - 1; // edge ids are arc - 1
            slots[c][slot_out] = arc_out - 1;
        }
        let mut ends: Vec<Vec<End>> = vec![Vec::new(); 2 * n];
        for (c, sl) in slots.iter().enumerate() {
            for (s, &e) in sl.iter().enumerate() {
                ends[e].push(End::new(c, s as u8));
            }
        }
        let edges = ends
            .into_iter()
            .enumerate()
            .map(|(i, e)| Edge {
                ends: [e[0], e[1]],
                label: i + 1,
            })
            .collect();
        Diagram {
            crossings: slots.into_iter().map(|s| Crossing { slots: s }).collect(),
            edges,
            free_loops: 0,
            name: None,
        }
    };
    let planar = |d: &Diagram| {
        let v = d.crossings.len() as i64;
        let e = d.edges.len() as i64;
        v - e + d.faces().len() as i64 == 2
    };
    if let Some(signs) = signs {
        // Traversal orientation: every passage enters at its in slot, so the
        // crossing sign convention forces the over-in slot directly.
        let mut rot = 0u64;
        for (c, &s) in signs.iter().enumerate() {
            if s < 0 {
                rot |= 1 << c;
            }
        }
        let d = build(rot);
        if !planar(&d) {
            return Err(CodeError::NotRealizable);
        }
        d.validate()?;
        return Ok(d);
    }
    for rot in 0..(1u64 << n) {
        let d = build(rot);
        if planar(&d) {
            d.validate()?;
            return Ok(d);
        }
    }
    Err(CodeError::NotRealizable)
}

/// Closure of a braid word on `strands` strands; letter `±k` is a crossing
/// of strands `k, k+1` with the left strand passing over when positive.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Diagram, CodeError> {
    if strands < 2 || word.is_empty() {
        return Err(CodeError::BadGauss("braid needs 2+ strands and letters".into()));
    }
    // Wire ids: one per strand to start, two fresh per crossing; closure
    // merges each strand's final wire into its initial one.
    let mut wire_count = strands;
    let mut current: Vec<usize> = (0..strands).collect();
    let initial = current.clone();
    let mut slots: Vec<[usize; 4]> = Vec::new();
    for &letter in word {
        let k = letter.unsigned_abs() as usize;
        if k == 0 || k >= strands {
            return Err(CodeError::BadGauss(format!("bad braid letter {letter}")));
        }
        let (left, right) = (current[k - 1], current[k]);
        let (out_left, out_right) = (wire_count, wire_count + 1);
        wire_count += 2;
        // Slots counterclockwise; strands run downward, left strand over for
        // a positive letter.
        let sl = if letter > 0 {
            [right, left, out_left, out_right]
        } else {
            [left, out_left, out_right, right]
        };
        slots.push(sl);
        current[k - 1] = out_left;
        current[k] = out_right;
    }
    let mut remap: Vec<usize> = (0..wire_count).collect();
    for s in 0..strands {
        if current[s] == initial[s] {
            return Err(CodeError::BadGauss(format!("strand {} unused", s + 1)));
        }
        remap[initial[s]] = current[s];
    }
    let live: Vec<usize> = (0..wire_count).filter(|&w| remap[w] == w).collect();
    let index_of = |w: usize| live.binary_search(&remap[w]).unwrap();
    let crossings: Vec<Crossing> = slots
        .iter()
        .map(|sl| Crossing {
            slots: [
                index_of(sl[0]),
                index_of(sl[1]),
                index_of(sl[2]),
                index_of(sl[3]),
            ],
        })
        .collect();
    let dummy = End::new(usize::MAX, 0);
    let mut edges: Vec<Edge> = (0..live.len())
        .map(|i| Edge {
            ends: [dummy, dummy],
            label: i + 1,
        })
        .collect();
    for (c, x) in crossings.iter().enumerate() {
        for (s, &e) in x.slots.iter().enumerate() {
            let end = End::new(c, s as u8);
            if edges[e].ends[0] == dummy {
                edges[e].ends[0] = end;
            } else {
                edges[e].ends[1] = end;
            }
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

/// DT code of a knot diagram under its canonical orientation, starting at
/// the tail of its smallest-labelled edge.
pub fn dt_code(d: &Diagram) -> Result<Vec<i64>, CodeError> {
    if d.component_count() != 1 || d.crossing_count() == 0 {
        return Err(CodeError::BadGauss("DT codes are for knots".into()));
    }
    let n = d.crossing_count();
    let o = d.canonical_orientation();
    let comp = &d.components()[0];
    let mut e = comp[0];
    // Walk 2n passages.
    let mut passage_at: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n]; // (passage no, under?)
    for p in 1..=2 * n {
        let head = o.head_end(d, e);
        let under = head.slot % 2 == 0;
        passage_at[head.crossing].push((p, under));
        let through = End::new(head.crossing, (head.slot + 2) % 4);
        e = d.edge_at(through);
    }
    let mut code = vec![0i64; n];
    for pairs in passage_at {
        let (p1, u1) = pairs[0];
        let (p2, _) = pairs[1];
        let (odd, even, odd_under) = if p1 % 2 == 1 {
            (p1, p2, u1)
        } else {
            (p2, p1, !u1)
        };
        code[(odd - 1) / 2] = if odd_under { even as i64 } else { -(even as i64) };
    }
    Ok(code)
}

/// Parse a whitespace- or comma-separated signed DT code string.
pub fn parse_dt(text: &str) -> Result<Vec<i64>, CodeError> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| CodeError::BadPairing(format!("bad entry {t}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{check_state, State};

    #[test]
    fn trefoil_dt() {
        let d = realize_dt(&[4, 6, 2]).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert!(d.is_alternating());
        assert!(d.is_reduced());
        assert!(d.is_prime().unwrap());
        let o = d.canonical_orientation();
        assert_eq!(d.writhe(&o).abs(), 3);
    }

    #[test]
    fn figure8_dt() {
        let d = realize_dt(&[4, 6, 8, 2]).unwrap();
        assert_eq!(d.crossing_count(), 4);
        assert!(d.is_alternating());
        let o = d.canonical_orientation();
        assert_eq!(d.writhe(&o), 0);
        // Both checkerboard states of an alternating diagram are adequate.
        for s in [State::all_plus(4), State::all_minus(4)] {
            assert!(check_state(&d, &s).unwrap().adequate);
        }
    }

    #[test]
    fn braid_closures() {
        // sigma_1^3: the positive trefoil.
        let t = braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(t.component_count(), 1);
        let o = t.canonical_orientation();
        assert_eq!(t.writhe(&o), 3);
        assert!(t.is_alternating());
        // (sigma_1 sigma_2)^4: the (3,4)-torus knot.
        let d = braid_closure(3, &[1, 2, 1, 2, 1, 2, 1, 2]).unwrap();
        assert_eq!(d.crossing_count(), 8);
        assert_eq!(d.component_count(), 1);
        assert!(!d.is_alternating());
        let o = d.canonical_orientation();
        assert_eq!(d.writhe(&o), 8);
        // sigma_1^4: the (2,4)-torus link.
        let l = braid_closure(2, &[1, 1, 1, 1]).unwrap();
        assert_eq!(l.component_count(), 2);
    }

    #[test]
    fn dt_round_trip_nonalternating() {
        let d = braid_closure(3, &[1, 2, 1, 2, 1, 2, 1, 2]).unwrap();
        let code = dt_code(&d).unwrap();
        assert_eq!(code.len(), 8);
        assert!(code.iter().any(|&a| a < 0));
        let d2 = realize_dt(&code).unwrap();
        assert_eq!(d2.crossing_count(), 8);
        assert_eq!(d2.component_count(), 1);
        assert!(!d2.is_alternating());
        let o = d2.canonical_orientation();
        assert_eq!(d2.writhe(&o).abs(), 8);
        // The DT realization of the re-encoded diagram round-trips again.
        let code2 = dt_code(&d2).unwrap();
        let d3 = realize_dt(&code2).unwrap();
        assert_eq!(d3.crossing_count(), 8);
    }

    #[test]
    fn malformed_codes_rejected() {
        assert!(realize_dt(&[3, 4]).is_err());
        assert!(realize_dt(&[4, 4]).is_err());
        assert!(realize_dt(&[]).is_err());
        assert!(realize_dt(&[4, 6, 14]).is_err());
    }

    #[test]
    fn gauss_trefoil() {
        let d = realize_gauss("O1+U2+O3+U1+O2+U3+").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert!(d.is_alternating());
        let o = d.canonical_orientation();
        assert_eq!(d.writhe(&o), 3);
    }

    #[test]
    fn gauss_wrong_sign_is_unrealizable() {
        // Consistent per-crossing signs, but no planar diagram matches.
        assert!(matches!(
            realize_gauss("O1+U2+O3-U1+O2+U3-"),
            Err(CodeError::NotRealizable)
        ));
        // Inconsistent sign tokens are malformed.
        assert!(matches!(
            realize_gauss("O1+U2+O3+U1+O2+U3-"),
            Err(CodeError::BadGauss(_))
        ));
    }
}
