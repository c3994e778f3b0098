//! Acceptance suite. Runs as a plain binary so that each criterion prints a
//! single PASS/FAIL line whether or not output capture is on.
//!
//! `cargo test -p kirby-core --test acceptance`

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use kirby_core::family::{base_presentation, family_knot, final_presentation};
use kirby_core::homology::{manifold_homology, smith_normal_form};
use kirby_core::twobridge::{
    class_of, equivalent, expand_rational_surgery, is_hyperbolic, neg_continued_fraction, normalize,
};
use kirby_core::{certify, distinct_links, FamilyParams, IntMatrix, KnotTag, Slope, SurgeryPresentation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const N_RANGE: std::ops::RangeInclusive<i64> = 2..=8;
const K_RANGE: std::ops::RangeInclusive<i64> = 0..=5;

type Outcome = Result<String, String>;

fn sweep() -> impl Iterator<Item = FamilyParams> {
    N_RANGE.flat_map(|n| K_RANGE.map(move |k| FamilyParams::new(n, k).unwrap()))
}

// ---- independent oracles ----

/// Laplace expansion along the first row.
fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn rows_of(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect()).collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// gcd of all k×k minors of `m`.
fn minor_gcd(m: &[Vec<BigInt>], k: usize) -> BigInt {
    let (r, c) = (m.len(), m[0].len());
    let mut g = BigInt::zero();
    for rs in subsets(r, k) {
        for cs in subsets(c, k) {
            let sub: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
            g = g.gcd(&cofactor_det(&sub));
        }
    }
    g
}

fn check_snf(rows: &[Vec<i64>]) -> Result<(), String> {
    let m = IntMatrix::from_rows(rows);
    let s = smith_normal_form(&m);
    let d = &s.diagonal;
    let (r, c) = (m.rows(), m.cols());
    if d.rows() != r || d.cols() != c || !d.is_diagonal() {
        return Err(format!("{rows:?}: D not diagonal of the right shape"));
    }
    if s.left.mul(&m).mul(&s.right) != *d {
        return Err(format!("{rows:?}: U·M·V != D"));
    }
    for (name, u) in [("U", &s.left), ("V", &s.right)] {
        if !cofactor_det(&rows_of(u)).abs().is_one() {
            return Err(format!("{rows:?}: {name} not unimodular"));
        }
    }
    let mrows = rows_of(&m);
    let mut prod = BigInt::one();
    for k in 1..=r.min(c) {
        let dk = d.get(k - 1, k - 1);
        if dk.is_negative() {
            return Err(format!("{rows:?}: negative diagonal entry"));
        }
        prod *= dk;
        if prod != minor_gcd(&mrows, k) {
            return Err(format!("{rows:?}: d1..d{k} = {prod} but gcd of minors differs"));
        }
    }
    Ok(())
}

/// `q` and `q'` present the same oriented 2-bridge knot when `q' ≡ q^{±1}`.
fn schubert_equivalent(p: i64, q: i64, p2: i64, q2: i64) -> bool {
    if p != p2 {
        return false;
    }
    let (q, q2) = (q.rem_euclid(p), q2.rem_euclid(p));
    q == q2 || (q * q2).rem_euclid(p) == 1
}

/// Not the torus knot `T(2, p)`: `q^{±1} ∉ {±1} mod p`.
fn schubert_hyperbolic(p: i64, q: i64) -> bool {
    let q = q.rem_euclid(p);
    let inv = (1..p).find(|x| (q * x).rem_euclid(p) == 1).unwrap();
    ![1, p - 1].contains(&q) && ![1, p - 1].contains(&inv)
}

fn fold_oracle(coeffs: &[i64]) -> BigRational {
    let mut acc: Option<BigRational> = None;
    for &a in coeffs.iter().rev() {
        let a = BigRational::from_integer(a.into());
        acc = Some(match acc {
            None => a,
            Some(x) => a - BigRational::one() / x,
        });
    }
    acc.unwrap()
}

fn run_cli(args: &[String]) -> u8 {
    let argv = std::iter::once("kirby".to_string()).chain(args.iter().cloned());
    kirby_core::cli::run(argv, &mut std::io::sink(), &mut std::io::sink())
}

// ---- criteria ----

fn replay() -> Outcome {
    let mut cases = 0;
    for params in sweep() {
        let (n, k) = (params.n(), params.k());
        let cert = certify(params).map_err(|e| format!("({n},{k}): {e}"))?;
        let r = &cert.s3_report;
        if !r.ok {
            return Err(format!("({n},{k}): report not ok: {:?}", r.failure));
        }
        if cert.script.initial != final_presentation(params).unwrap() || !cert.script.claimed_final.is_empty() {
            return Err(format!("({n},{k}): script endpoints wrong"));
        }
        if !r.homology_trace.iter().all(|h| h.is_trivial()) || r.homology_trace.len() != cert.script.moves.len() + 1 {
            return Err(format!("({n},{k}): trace not constant trivial"));
        }
        if r.retype_steps.len() != n as usize || cert.retype_axioms.len() != n as usize {
            return Err(format!("({n},{k}): {} retype axioms, expected {n}", r.retype_steps.len()));
        }
        let flagged = r.steps.iter().filter(|s| s.flags.iter().any(|f| f == "axiom")).count();
        if flagged != n as usize {
            return Err(format!("({n},{k}): {flagged} flagged steps"));
        }
        // the inverse slides recover the base link up to knot tags
        let base = base_presentation(params);
        let mut p = cert.script.initial.clone();
        for m in cert.script.moves.iter().take(2 * (n as usize - 1)) {
            p = m.apply(&p).unwrap();
        }
        if p.linking() != base.linking()
            || p.components().iter().zip(base.components()).any(|(a, b)| a.slope != b.slope)
        {
            return Err(format!("({n},{k}): slides do not recover the base link"));
        }
        let code = run_cli(&["certify".into(), "--n".into(), n.to_string(), "--k".into(), k.to_string()]);
        if code != 0 {
            return Err(format!("({n},{k}): certify exited {code}"));
        }
        cases += 1;
    }
    Ok(format!("{cases} (n,k) pairs replayed to the empty presentation"))
}

fn framed_determinant() -> Outcome {
    for params in sweep() {
        let p = final_presentation(params).unwrap();
        let rows: Vec<Vec<BigInt>> = p
            .framed_linking_matrix()
            .unwrap()
            .rows()
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let det = cofactor_det(&rows);
        let cert_det = certify(params).unwrap().framed_determinant;
        if det != BigInt::from(-1) || cert_det != det {
            return Err(format!("({},{}): det {det}, certificate {cert_det}", params.n(), params.k()));
        }
    }
    Ok("det = -1 for all 42 pairs".into())
}

fn component_classes() -> Outcome {
    let fig8 = class_of(&KnotTag::FigureEight).unwrap();
    if fig8 != normalize(5, 2).unwrap() || !equivalent(&fig8, &normalize(5, 3).unwrap()) || !schubert_equivalent(5, 3, 5, 2) {
        return Err("FigureEight is not S(5,2)".into());
    }
    for params in sweep() {
        let (n, k) = (params.n(), params.k());
        let mut raw = vec![(5, 2)];
        for i in 2..=n {
            let m = i + k;
            raw.push((1 + 20 * m, 2 - 10 * m));
            if family_knot(i, k).unwrap() != (KnotTag::TwoBridge { p: 1 + 20 * m, q: 2 - 10 * m }) {
                return Err(format!("({n},{k}): K{i} has the wrong parameters"));
            }
        }
        let cert = certify(params).unwrap();
        for (a, &(p, q)) in raw.iter().enumerate() {
            if !schubert_hyperbolic(p, q) || !is_hyperbolic(&cert.component_classes[a]) {
                return Err(format!("({n},{k}): S({p},{q}) not hyperbolic"));
            }
            if !schubert_equivalent(p, q, cert.component_classes[a].p(), cert.component_classes[a].q_canonical()) {
                return Err(format!("({n},{k}): class of K{} wrong", a + 1));
            }
            for (b, &(p2, q2)) in raw.iter().enumerate().skip(a + 1) {
                if schubert_equivalent(p, q, p2, q2) || equivalent(&cert.component_classes[a], &cert.component_classes[b]) {
                    return Err(format!("({n},{k}): K{} and K{} equivalent", a + 1, b + 1));
                }
            }
        }
        if !cert.all_hyperbolic || !cert.pairwise_distinct {
            return Err(format!("({n},{k}): certificate flags disagree"));
        }
    }
    Ok("all components hyperbolic and pairwise inequivalent".into())
}

fn linking_and_tunnels() -> Outcome {
    for params in sweep() {
        let (n, k) = (params.n(), params.k());
        let p = final_presentation(params).unwrap();
        let lk = p.linking();
        let len = p.len();
        let mut values = BTreeSet::new();
        for i in 0..len {
            for j in (i + 1)..len {
                let expected = if i == 0 { n - 1 } else { n };
                if lk[i][j] != expected || lk[i][j] == 0 {
                    return Err(format!("({n},{k}): lk({},{}) = {}", i + 1, j + 1, lk[i][j]));
                }
                values.insert(lk[i][j]);
            }
        }
        let want: BTreeSet<i64> = if n == 2 { [1].into() } else { [n - 1, n].into() };
        let cert = certify(params).unwrap();
        if values != want || cert.linking.values != want.iter().copied().collect::<Vec<_>>() || !cert.linking.complete {
            return Err(format!("({n},{k}): linking values {values:?}"));
        }
        let t = &cert.tunnel_number;
        if t.lower != len as i64 - 1 || t.upper != n - 1 || t.lower != t.upper {
            return Err(format!("({n},{k}): tunnel bounds {}..{}", t.lower, t.upper));
        }
    }
    Ok("complete linking graph, tunnel number n-1".into())
}

fn distinct_k() -> Outcome {
    let mut pairs = 0;
    for n in N_RANGE {
        let classes = |k: i64| -> BTreeSet<(i64, i64)> {
            let mut s: BTreeSet<(i64, i64)> = [(5, 2)].into();
            for i in 2..=n {
                let p = 1 + 20 * (i + k);
                let q = (2 - 10 * (i + k)).rem_euclid(p);
                let inv = (1..p).find(|x| (q * x).rem_euclid(p) == 1).unwrap();
                s.insert((p, q.min(inv)));
            }
            s
        };
        let mut per_n = 0;
        for a in K_RANGE {
            for b in (a + 1)..=*K_RANGE.end() {
                let fa = FamilyParams::new(n, a).unwrap();
                let fb = FamilyParams::new(n, b).unwrap();
                if !distinct_links(fa, fb).unwrap() || classes(a) == classes(b) {
                    return Err(format!("n={n}: k={a} and k={b} not distinguished"));
                }
                per_n += 1;
            }
        }
        if per_n != 15 {
            return Err(format!("n={n}: {per_n} pairs"));
        }
        pairs += per_n;
    }
    Ok(format!("{pairs} pairs distinct (15 per n)"))
}

fn move_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b_6972_6279);
    let mut tally = common::MoveTally::default();
    const TRIALS: usize = 10_000;
    for trial in 0..TRIALS {
        let p = common::random_presentation(&mut rng, 6);
        common::check_moves(&p, &mut rng, &mut tally).map_err(|e| format!("trial {trial}: {e}"))?;
    }
    let min_count = [
        tally.blow_up,
        tally.blow_down,
        tally.rolfsen_twist,
        tally.delete_infinity,
        tally.retype,
        tally.blow_pair_identity,
        tally.twist_pair_identity,
        tally.blow_down_twist_equivalence,
    ]
    .into_iter()
    .min()
    .unwrap();
    if min_count < TRIALS {
        return Err(format!("only {min_count} trials for some property"));
    }
    Ok(format!(
        "{TRIALS} trials, 0 failures ({} handle slides on multi-component links)",
        tally.handle_slide
    ))
}

fn snf_oracle() -> Outcome {
    let started = Instant::now();
    let shapes: Vec<(usize, usize)> = (1..=3).flat_map(|r| (1..=3).map(move |c| (r, c))).collect();
    let mut total = 0usize;
    for (r, c) in shapes {
        let cells = (r * c) as u32;
        let count = 5usize.pow(cells);
        let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
        let chunk = count.div_ceil(threads);
        let failure = std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    s.spawn(move || {
                        for idx in (t * chunk)..((t + 1) * chunk).min(count) {
                            let mut x = idx;
                            let rows: Vec<Vec<i64>> = (0..r)
                                .map(|_| {
                                    (0..c)
                                        .map(|_| {
                                            let v = (x % 5) as i64 - 2;
                                            x /= 5;
                                            v
                                        })
                                        .collect()
                                })
                                .collect();
                            check_snf(&rows)?;
                        }
                        Ok::<(), String>(())
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).find(Result::is_err)
        });
        if let Some(Err(e)) = failure {
            return Err(e);
        }
        total += count;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..1000 {
        let rows: Vec<Vec<i64>> = (0..4).map(|_| (0..4).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        check_snf(&rows)?;
    }
    Ok(format!(
        "{total} exhaustive matrices up to 3x3 + 1000 random 4x4 ({:.1}s)",
        started.elapsed().as_secs_f64()
    ))
}

fn continued_fractions() -> Outcome {
    let mut folded = 0;
    for a in 2..=500i64 {
        for b in 1..a {
            if a.gcd(&b) != 1 {
                continue;
            }
            let cf = neg_continued_fraction(a, b).map_err(|e| format!("{a}/{b}: {e}"))?;
            let want = BigRational::new(a.into(), b.into());
            if fold_oracle(&cf.coefficients) != want || cf.fold() != want {
                return Err(format!("{a}/{b}: {:?} does not fold back", cf.coefficients));
            }
            if cf.coefficients[1..].iter().any(|&c| c < 2) {
                return Err(format!("{a}/{b}: coefficient below 2 in {:?}", cf.coefficients));
            }
            folded += 1;
        }
    }
    if neg_continued_fraction(41, 23).unwrap().coefficients != [2, 5, 3, 2] {
        return Err("41/23 != [2,5,3,2]".into());
    }

    // Hopf link framed 0 and 5/2: |H1| = 2
    let hopf = SurgeryPresentation::new(
        vec![(KnotTag::Unknot, Slope::integer(0)), (KnotTag::Unknot, Slope::new(5, 2).unwrap())],
        vec![vec![0, 1], vec![1, 0]],
    )
    .unwrap();
    let expanded = expand_rational_surgery(&hopf, common::component_id(2)).unwrap();
    let rows: Vec<Vec<BigInt>> = expanded
        .framed_linking_matrix()
        .unwrap()
        .rows()
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    if cofactor_det(&rows).abs() != BigInt::from(2) || manifold_homology(&expanded) != manifold_homology(&hopf) {
        return Err("Hopf (0, 5/2) expansion does not have |det| = 2".into());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for trial in 0..1000 {
        let p = common::random_presentation(&mut rng, 5);
        common::check_expansion(&p, &mut rng).map_err(|e| format!("trial {trial}: {e}"))?;
    }
    Ok(format!("{folded} fractions fold back, 1000 expansions preserve H1"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("reduction scripts to S3 for (n,k) in 2..8 x 0..5", replay),
        ("framed linking matrix determinant is -1", framed_determinant),
        ("component classes hyperbolic and pairwise distinct", component_classes),
        ("complete linking graph and tunnel number bounds", linking_and_tunnels),
        ("distinct k give distinct links", distinct_k),
        ("move engine property suite", move_properties),
        ("Smith normal form oracle", snf_oracle),
        ("continued fractions and rational expansion", continued_fractions),
    ];
    let started = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL [{}] {name}: {e}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed ({:.1}s)",
        criteria.len() - failed,
        started.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
