use neuwirth_core::decide::*;
use neuwirth_core::fraction::Fraction;
use neuwirth_core::tangles::*;
use rayon::prelude::*;
use std::time::Instant;

fn proper_fractions(max_den: i64) -> Vec<Fraction> {
    let mut v = Vec::new();
    for q in 2..=max_den {
        for p in 1..q {
            if num_integer::gcd(p, q) == 1 {
                v.push(Fraction::new(p, q).unwrap());
                v.push(Fraction::new(-p, q).unwrap());
            }
        }
    }
    v
}

fn main() {
    let max_den: i64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let fracs = proper_fractions(max_den);
    let n = fracs.len();
    println!("{} slopes, {} triples", n, n * n * n);
    let t0 = Instant::now();
    let triples: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .collect();
    let results: Vec<(String, String)> = triples
        .par_iter()
        .filter_map(|&(i, j, k)| {
            let m = MontesinosPresentation::new(vec![
                fracs[i].clone(),
                fracs[j].clone(),
                fracs[k].clone(),
            ])
            .ok()?;
            match montesinos_certify(&m) {
                Err(DecideError::NotAKnot(_)) => None,
                Err(e) => Some((m.to_string(), format!("ERROR {e}"))),
                Ok(CertifyOutcome::Certified(c)) => {
                    let v = validate_certificate(&c);
                    if !v.ok {
                        Some((m.to_string(), format!("INVALID {:?} {:?}", c.route, v.trail)))
                    } else {
                        None
                    }
                }
                Ok(CertifyOutcome::Failed { attempts }) => {
                    Some((m.to_string(), format!("FAILED {attempts:?}")))
                }
            }
        })
        .collect();
    println!("elapsed {:?}, {} problems", t0.elapsed(), results.len());
    for (m, r) in results.iter().take(12) {
        println!("  {m}: {r}");
    }
}
