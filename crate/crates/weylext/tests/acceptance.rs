//! Acceptance criteria. Runs without the libtest harness so every criterion
//! prints exactly one line; the process fails if any criterion fails.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::time::Instant;
use weylext::abw::{Ambient, BasedModule, WeylModule};
use weylext::combinatorics::{block_decomposition, enumerate_standard_tableaux, partitions_of, Partition, SkewShape};
use weylext::homology::{ext_from_exterior, ext_weyl, module_closure, relation_vectors, RelationModule};
use weylext::sweep::{jobs, run_jobs, Kind};
use weylext::theorems::{
    certificate_coefficients, lemma_c_certificate, solve_constraints, thm21_cases, verify_lemmas, verify_thm21,
    verify_thm22, Thm22Mode, VerificationReport,
};
use weylext::zlinalg::{column_lattice, int, invariant_factors, kernel_basis, snf, AbelianGroupType, Int, IntMatrix};

type Outcome = Result<String, String>;

fn workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn partitions(d: usize) -> Vec<Partition> {
    partitions_of(d, d).into_iter().rev().collect()
}

fn failures(reports: &[VerificationReport]) -> Vec<String> {
    reports.iter().filter(|r| !r.pass).map(|r| format!("{} {}: {} vs {}", r.kind, r.case, r.predicted, r.computed)).collect()
}

fn all_pass(reports: &[VerificationReport], what: &str) -> Outcome {
    let bad = failures(reports);
    if bad.is_empty() {
        Ok(format!("{} {what}", reports.len()))
    } else {
        Err(format!("{} of {} failed, first: {}", bad.len(), reports.len(), bad[0]))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn criterion_1() -> Outcome {
    // oracle: every (λ, μ) of equal degree whose difference is e_r - e_s, r < s
    let mut oracle = BTreeSet::new();
    for d in 2..=6 {
        let ps = partitions(d);
        for l in &ps {
            for m in &ps {
                let n = l.len().max(m.len());
                let diff: Vec<i64> = (0..n).map(|i| m.part(i + 1) as i64 - l.part(i + 1) as i64).collect();
                let up: Vec<usize> = (0..n).filter(|&i| diff[i] == 1).collect();
                let down: Vec<usize> = (0..n).filter(|&i| diff[i] == -1).collect();
                let rest = diff.iter().filter(|&&x| x != 0).count();
                if rest == 2 && up.len() == 1 && down.len() == 1 && up[0] < down[0] {
                    let (r, s) = (up[0] + 1, down[0] + 1);
                    let order = l.part(r) - l.part(s) + s - r + 1;
                    oracle.insert((l.to_string(), m.to_string(), order));
                }
            }
        }
    }
    let cases = thm21_cases(6);
    let listed: BTreeSet<_> = cases.iter().map(|c| (c.lambda.to_string(), c.mu.to_string(), c.predicted)).collect();
    if listed != oracle || cases.len() != oracle.len() {
        return Err(format!("case list has {} entries, oracle {}", cases.len(), oracle.len()));
    }
    let reports: Vec<VerificationReport> = cases.par_iter().map(|c| verify_thm21(c, 2)).collect();
    all_pass(&reports, "pairs: Hom 0, Ext^1 cyclic of the predicted order, Ext^2 0")
}

/// `g` from the column lengths, written out independently of the library.
fn thm22_oracle(lambda: &Partition) -> Option<u64> {
    let cols: Vec<u64> = (1..=lambda.part(1)).map(|c| lambda.parts().iter().filter(|&&x| x >= c).count() as u64).collect();
    if cols.len() < 2 {
        return None;
    }
    let mut g = 0;
    for w in cols.windows(2) {
        let mut l = 1;
        for x in 1..=w[1] {
            l = l / gcd(l, x) * x;
        }
        g = gcd(g, (w[0] + 1) / gcd(w[0] + 1, l));
    }
    Some(g)
}

fn criterion_2() -> Outcome {
    let lambdas: Vec<Partition> = (2..=7).flat_map(partitions).filter(|l| l.part(1) >= 2).collect();
    let reports: Vec<(Partition, VerificationReport, VerificationReport)> = lambdas
        .par_iter()
        .map(|l| (l.clone(), verify_thm22(l, Thm22Mode::Direct), verify_thm22(l, Thm22Mode::Dual)))
        .collect();
    for (l, d, u) in &reports {
        let g = thm22_oracle(l).ok_or_else(|| format!("{l} has one column"))?;
        let want = AbelianGroupType::cyclic(g as i64).to_string();
        if d.predicted != want || d.computed != want || !d.pass {
            return Err(format!("{l}: oracle {want}, direct {} (predicted {})", d.computed, d.predicted));
        }
        if u.computed != want || !u.pass {
            return Err(format!("{l}: oracle {want}, dual mode {}", u.computed));
        }
    }
    Ok(format!("{} partitions: direct Ext^1 and dual mode equal the gcd formula", reports.len()))
}

fn criterion_3() -> Outcome {
    let want = |i: usize| if i == 1 { AbelianGroupType::cyclic(2) } else { AbelianGroupType::trivial() };
    let d2 = WeylModule::new(SkewShape::straight("2".parse().unwrap()), 2);
    let cobar = ext_from_exterior(2, &d2, 3).map_err(|e| e.to_string())?;
    let generic = ext_weyl(&"1,1".parse().unwrap(), &"2".parse().unwrap(), Some(2), 3).map_err(|e| e.to_string())?;
    for i in 0..=3 {
        if cobar[i] != want(i) || generic[i].group != want(i) {
            return Err(format!("Ext^{i}(L2, D2): {} / {}", cobar[i], generic[i].group));
        }
    }
    let mut checked = 0;
    for a in 1..=4usize {
        for b in 1..=a {
            let (nu, multiple) = if b == a {
                (vec![a, a], a + 2)
            } else {
                (vec![a, b], (a + 2) * (b + 1))
            };
            let mut cases = vec![(nu, multiple)];
            if b == 1 {
                cases.push((vec![a], a + 1));
            }
            for (nu, m) in cases {
                let nu = Partition::new(nu).unwrap();
                let cert = lemma_c_certificate(&nu, nu.len() + 1).map_err(|e| e.to_string())?;
                if cert.composite.abs() != int(m as i64) {
                    return Err(format!("nu = {nu}: multiple {} instead of {m}", cert.composite));
                }
                checked += 1;
            }
            let (ai, bi) = (a as i64, b as i64);
            let blocks = block_decomposition(&Partition::new(if b == a { vec![a, a] } else { vec![a, b] }).unwrap()).unwrap();
            let tuple = solve_constraints(&blocks).ok_or("constraint lattice is not rank one")?;
            let expected: Vec<Int> = if b == a {
                vec![int(ai), int(1), int(-1)]
            } else {
                vec![int((ai + 1) * bi), int(-(ai + 1)), int(-bi), int(1)]
            };
            if tuple != expected {
                return Err(format!("a={a}, b={b}: solver tuple {tuple:?}"));
            }
        }
    }
    Ok(format!("Ext(L2, D2) = 0, Z/2, 0, 0 on both routes; {checked} example multiples and 10 coefficient tuples"))
}

/// `ℓ_j` and `h_j` read directly off the rows of `ν`.
fn lemma_oracle(nu: &Partition) -> (i64, i64, i64) {
    let rows = nu.parts();
    let (mut a_prod, mut b_prod, mut c_prod) = (1i64, 1i64, 1i64);
    let mut start = 0;
    let mut j = 0;
    while start < rows.len() {
        let mut end = start;
        while end + 1 < rows.len() && rows[end + 1] == rows[start] {
            end += 1;
        }
        let ell = (rows[start] + rows.len() - 1 - end) as i64;
        let h = ell + (end - start + 1) as i64;
        a_prod *= ell;
        c_prod *= h;
        if j > 0 {
            b_prod *= h;
        }
        j += 1;
        start = end + 1;
    }
    (a_prod, b_prod, c_prod)
}

fn criterion_4() -> Outcome {
    let nus: Vec<Partition> = (1..=6).flat_map(partitions).filter(|p| p.runs().len() <= 3).collect();
    let results: Vec<(Partition, Vec<VerificationReport>)> = nus.par_iter().map(|nu| (nu.clone(), verify_lemmas(nu))).collect();
    for (nu, reps) in &results {
        let (a, b, c) = lemma_oracle(nu);
        for (kind, want) in [("lemmaA", a), ("lemmaB", b), ("lemmaC", c)] {
            let r = reps.iter().find(|r| r.kind == kind).ok_or(format!("{nu}: no {kind} report"))?;
            if !r.pass || r.predicted != want.to_string() {
                return Err(format!("{kind} {nu}: oracle {want}, predicted {}, computed {}", r.predicted, r.computed));
            }
        }
        if let Some(r) = reps.iter().find(|r| !r.pass) {
            return Err(format!("{} {nu}: {}", r.kind, r.computed));
        }
        let sum: i64 = certificate_coefficients(&block_decomposition(nu).unwrap()).iter().map(|t| t.b.abs()).sum();
        if sum != c {
            return Err(format!("{nu}: sum |b_i| = {sum}, oracle {c}"));
        }
        let h1 = (nu.part(1) + nu.len()) as i64;
        if c != h1 * b {
            return Err(format!("{nu}: C {c} != h1 {h1} * B {b}"));
        }
    }
    Ok(format!("{} partitions: certificate and solver agree on A, B, C", results.len()))
}

fn skew_shapes(max_degree: usize, max_outer: usize) -> Vec<SkewShape> {
    let mut out = Vec::new();
    for od in 1..=max_outer {
        for outer in partitions(od) {
            for id in 0..od {
                if od - id > max_degree {
                    continue;
                }
                for inner in if id == 0 { vec![Partition::empty()] } else { partitions(id) } {
                    // an empty first row or column only translates the shape
                    if inner.len() == outer.len() || (!inner.is_empty() && inner.part(1) == outer.part(1)) {
                        continue;
                    }
                    if let Ok(s) = SkewShape::new(outer.clone(), inner) {
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let shapes = skew_shapes(6, 8);
    let rank_fail: Option<String> = shapes
        .par_iter()
        .flat_map_iter(|s| (1..=4).map(move |n| (s.clone(), n)))
        .find_map_any(|(s, n)| {
            let rel = RelationModule::new(s.clone(), n);
            let divided = rel.divided();
            let rank: usize = divided.support().iter().map(|w| rel.d_prime_matrix(w).rank()).sum();
            let count = enumerate_standard_tableaux(&s, n, None).len();
            (rank != count).then(|| format!("{s} n={n}: rank {rank}, tableaux {count}"))
        });
    if let Some(f) = rank_fail {
        return Err(f);
    }
    let small: Vec<SkewShape> = skew_shapes(5, 7).into_iter().filter(|s| s.degree() <= 5).collect();
    let closure_fail = small.par_iter().find_map_any(|s| {
        let n = s.num_rows().max(1);
        let rel = RelationModule::new(s.clone(), n);
        let divided: &Ambient = rel.divided();
        let closure = module_closure(divided, &relation_vectors(s, n, divided));
        divided
            .support()
            .into_iter()
            .find(|w| closure.get(w).cloned().unwrap_or_else(|| IntMatrix::zeros(0, divided.dim(w))) != column_lattice(&rel.basis(w)))
            .map(|w| format!("{s}: closure differs from ker d' at {w:?}"))
    });
    if let Some(f) = closure_fail {
        return Err(f);
    }
    let lambdas: Vec<Partition> = (1..=6).flat_map(partitions).collect();
    let vanishing = run_jobs(&jobs(Kind::Vanishing, 6, 2), workers(), false);
    if vanishing.len() != lambdas.len() {
        return Err(format!("{} vanishing reports for {} partitions", vanishing.len(), lambdas.len()));
    }
    all_pass(&vanishing, "").map(|_| {
        format!(
            "{} skew shapes x n<=4 ranks, {} closures, {} partitions with Hom Z and Ext^1,2 0",
            shapes.len(),
            small.len(),
            lambdas.len()
        )
    })
}

fn criterion_6() -> Outcome {
    let removal = run_jobs(&jobs(Kind::Removal, 6, 2), workers(), false);
    let stability = run_jobs(&jobs(Kind::Stability, 6, 2), workers(), false);
    let skew = run_jobs(&jobs(Kind::Skewrep, 5, 2), workers(), false);
    if removal.len() != thm21_cases(6).len() || stability.len() != 20 || skew.is_empty() {
        return Err(format!("report counts {} / {} / {}", removal.len(), stability.len(), skew.len()));
    }
    let all: Vec<VerificationReport> = removal.iter().chain(&stability).chain(&skew).cloned().collect();
    all_pass(&all, "").map(|_| format!("{} removal, {} stability, {} skew representative checks", removal.len(), stability.len(), skew.len()))
}

fn criterion_7() -> Outcome {
    let reports = run_jobs(&jobs(Kind::Digit, 6, 2), workers(), false);
    let expected = (1..=6).map(|d| partitions(d).len()).sum::<usize>() * 2;
    if reports.len() != expected {
        return Err(format!("{} reports, expected {expected}", reports.len()));
    }
    all_pass(&reports, "partition/prime pairs: digit criterion equals mod-p Hom existence")
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
    let density = rng.gen_range(0.3..1.0);
    let rows: Vec<Vec<i64>> =
        (0..r).map(|_| (0..c).map(|_| if rng.gen_bool(density) { rng.gen_range(-12..=12) } else { 0 }).collect()).collect();
    IntMatrix::from_i64(&rows)
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    for k in 0..500 {
        let a = random_matrix(&mut rng);
        let d = snf(&a);
        if d.u.mul(&a).mul(&d.v) != d.s {
            return Err(format!("case {k}: U A V != S"));
        }
        if d.u.det().abs() != Int::one() || d.v.det().abs() != Int::one() {
            return Err(format!("case {k}: transform not unimodular"));
        }
        for i in 0..d.s.rows() {
            for j in 0..d.s.cols() {
                if i != j && !d.s.get(i, j).is_zero() {
                    return Err(format!("case {k}: S not diagonal"));
                }
            }
        }
        let diag: Vec<Int> = (0..d.s.rows().min(d.s.cols())).map(|i| d.s.get(i, i).clone()).collect();
        for w in diag.windows(2) {
            let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            if !ok || w[0].is_negative() {
                return Err(format!("case {k}: divisibility fails on {diag:?}"));
            }
        }
        let kb = kernel_basis(&a);
        if !a.mul(&kb).is_zero() || kb.cols() != a.cols() - a.rank() {
            return Err(format!("case {k}: kernel basis wrong size or not in kernel"));
        }
        if kb.cols() > 0 && invariant_factors(&kb.transpose()).iter().any(|x| !x.is_one()) {
            return Err(format!("case {k}: kernel lattice not saturated"));
        }
    }
    Ok("500 random decompositions with U A V = S, unimodular U and V, divisibility chain; kernels saturated".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 thm21 sweep", criterion_1),
        ("2 thm22 sweep", criterion_2),
        ("3 literal values", criterion_3),
        ("4 lemmas A/B/C", criterion_4),
        ("5 structural invariants", criterion_5),
        ("6 principle checks", criterion_6),
        ("7 digit criterion", criterion_7),
        ("8 zlinalg properties", criterion_8),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|x| name.contains(x.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {name}: PASS ({msg}; {secs:.1}s)"),
            Err(msg) => {
                failed += 1;
                println!("criterion {name}: FAIL ({msg}; {secs:.1}s)");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
