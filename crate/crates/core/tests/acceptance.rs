//! Acceptance criteria. Runs without the libtest harness so that every criterion
//! prints exactly one PASS/FAIL line; the process exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use afideal::bratteli::{EventualDescriptor, IndexSet, LevelSets};
use afideal::exact::{pow2, ExactRational};
use afideal::metrics::{
    compare, d_beta, d_beta_truncated, d_hausdorff_ideal, d_phi, dbeta_fell_bound, Convention,
};
use afideal::qi::{
    closed_set_of_ideal, hausdorff, ideal_of_closed_set, paper_table_descriptor, ClosedSubsetQI, PaperSet,
    QIPoint,
};
use afideal::sample::{
    random_closed_set, random_descriptor, random_descriptor_family, random_finite_word, random_nonempty_closed_set,
};

const SEED: u64 = 20_240_917;

fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n, d)
}

fn p2(e: usize) -> ExactRational {
    pow2(-(e as i64))
}

struct Verdict {
    ok: bool,
    detail: String,
}

impl Verdict {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Self {
            ok,
            detail: detail.into(),
        }
    }
}

/// Counts mismatches and keeps the first few for the report.
struct Mismatches {
    total: usize,
    bad: usize,
    examples: Vec<String>,
}

impl Mismatches {
    fn new() -> Self {
        Self {
            total: 0,
            bad: 0,
            examples: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.bad += 1;
            if self.examples.len() < 2 {
                self.examples.push(msg());
            }
        }
    }

    fn summary(&self, what: &str) -> String {
        if self.bad == 0 {
            format!("{what} {}/{} ok", self.total, self.total)
        } else {
            format!("{what} {}/{} mismatches (e.g. {})", self.bad, self.total, self.examples.join("; "))
        }
    }
}

// Independent oracles: level sets and truncated sums written out directly from
// the definitions, without going through the descriptor machinery.

/// Point indices of `{2^-m}` or `{2^-n, 2^-(n+k)}`.
fn table_points(exponents: &[usize]) -> Vec<usize> {
    exponents.iter().map(|e| e + 1).collect()
}

/// Printed-table rule: summand `k <= p` is kept unless `x_k` is one of the points.
fn table_level(points: &[usize], p: usize) -> Vec<usize> {
    (1..=p).filter(|k| !points.contains(k)).collect()
}

/// Support rule for finite point sets (possibly with 0): summand `k < p` is kept
/// when `x_k` is not a point; the tail summand `p` is kept when no point lies in
/// `[0, x_p]`.
fn support_level(points: &[usize], zero: bool, p: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..p).filter(|k| !points.contains(k)).collect();
    if !zero && points.iter().all(|&k| k < p) {
        out.push(p);
    }
    out
}

fn symdiff_weight(p: usize, a: &[usize], b: &[usize]) -> ExactRational {
    a.iter()
        .filter(|k| !b.contains(k))
        .chain(b.iter().filter(|k| !a.contains(k)))
        .map(|&k| p2(p + k))
        .sum()
}

fn oracle_beta_partial(levels_a: impl Fn(usize) -> Vec<usize>, levels_b: impl Fn(usize) -> Vec<usize>, depth: usize) -> ExactRational {
    (1..=depth).map(|p| symdiff_weight(p, &levels_a(p), &levels_b(p))).sum()
}

fn run(name: &str, budget: Option<Duration>, f: impl FnOnce() -> Verdict) -> bool {
    let start = Instant::now();
    let mut v = f();
    let elapsed = start.elapsed();
    if let Some(b) = budget {
        if elapsed > b {
            v.ok = false;
            v.detail.push_str(&format!("; took {elapsed:?}, budget {b:?}"));
        }
    }
    println!(
        "{} {name}: {} [{:.3}s]",
        if v.ok { "PASS" } else { "FAIL" },
        v.detail,
        elapsed.as_secs_f64()
    );
    v.ok
}

fn criterion_1() -> Verdict {
    let rows = [
        ((1, 2, 1), (q(3, 8), q(1, 4), q(37, 128))),
        ((1, 2, 2), (q(7, 16), q(1, 4), q(145, 512))),
    ];
    let mut parts = Vec::new();
    let mut ok = true;
    for ((m, n, k), (h, phi, beta)) in rows {
        let a = ClosedSubsetQI::dyadic([m]);
        let b = ClosedSubsetQI::dyadic([n, n + k]);
        let r = compare(&a, &b, Convention::PaperTable).expect("paper shapes");
        // cross-check the library's sum against the literal table
        let (pa, pb) = (table_points(&[m]), table_points(&[n, n + k]));
        let lo = oracle_beta_partial(|p| table_level(&pa, p), |p| table_level(&pb, p), 60);
        let brackets = lo <= r.d_beta && r.d_beta <= &lo + &p2(60);
        ok &= r.d_hausdorff == h && r.d_phi == phi && r.d_beta == beta;
        parts.push(format!(
            "({m},{n},{k}) got ({}, {}, {}) want ({h}, {phi}, {beta}); depth-60 table sum brackets got: {brackets}",
            r.d_hausdorff, r.d_phi, r.d_beta
        ));
    }
    Verdict::new(ok, parts.join("; "))
}

fn criterion_2() -> Verdict {
    let mut beta = Mismatches::new();
    let mut phi = Mismatches::new();
    let mut haus = Mismatches::new();
    for m in 1..=8 {
        for n in 1..=8 {
            for k in 1..=8 {
                let a = paper_table_descriptor(PaperSet::Singleton { m });
                let b = paper_table_descriptor(PaperSet::Pair { n, k });
                if m < n {
                    let got = d_beta(&a, &b).expect("finite difference");
                    let want = (p2(2 * (n + k)) + p2(m) + p2(2 * n)) / ExactRational::from_integer(2);
                    beta.check(got == want, || format!("({m},{n},{k}) {got} vs {want}"));
                }
                let got = d_phi(&a, &b);
                let want = p2(m.min(n) + 1);
                phi.check(got == want, || format!("({m},{n},{k}) {got} vs {want}"));
                let sa = ClosedSubsetQI::dyadic([m]);
                let sb = ClosedSubsetQI::dyadic([n, n + k]);
                let got = hausdorff(&sa, &sb).expect("nonempty");
                let want = if m <= n {
                    (p2(m) - p2(n + k)).abs()
                } else {
                    (p2(m) - p2(n)).abs()
                };
                haus.check(got == want, || format!("({m},{n},{k}) {got} vs {want}"));
            }
        }
    }
    Verdict::new(
        beta.bad == 0 && phi.bad == 0 && haus.bad == 0,
        [beta.summary("d_beta"), phi.summary("d_phi"), haus.summary("d_H")].join("; "),
    )
}

fn fell_pairs() -> Vec<(EventualDescriptor, EventualDescriptor)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    // ideals of closed sets that differ in finitely many points, so d_beta is exact
    let mut pairs: Vec<_> = (0..1000)
        .map(|_| {
            let s = random_closed_set(&mut rng);
            let word = s.word().xor(&random_finite_word(&mut rng, 10));
            let t = ClosedSubsetQI::new(word, rng.gen_bool(0.5));
            (ideal_of_closed_set(&s), ideal_of_closed_set(&t))
        })
        .collect();
    for m in 1..=8 {
        for n in m + 1..=8 {
            for k in 1..=8 {
                pairs.push((
                    paper_table_descriptor(PaperSet::Singleton { m }),
                    paper_table_descriptor(PaperSet::Pair { n, k }),
                ));
            }
        }
    }
    pairs
}

fn criterion_3() -> Verdict {
    let two = ExactRational::from_integer(2);
    let mut m = Mismatches::new();
    let mut sharp = Mismatches::new();
    for (a, b) in fell_pairs() {
        let beta = d_beta(&a, &b).expect("finite difference");
        let phi = d_phi(&a, &b);
        let half_phi = &phi / &two;
        m.check(beta <= half_phi, || format!("d_beta {beta} > d_phi/2 {half_phi}"));
        // informational: the bound that does hold, 2x - 4x^2/3 with x = d_phi
        let bound = dbeta_fell_bound(&phi);
        sharp.check(beta <= bound, || format!("d_beta {beta} > {bound}"));
    }
    // full algebra vs the ideal of {0}: d_phi = 1/2, d_beta = 1/3
    let full = EventualDescriptor::full();
    let zero_ideal = ideal_of_closed_set(&ClosedSubsetQI::from_points([QIPoint::Zero]));
    let (beta, phi) = (d_beta(&full, &zero_ideal).expect("finite difference"), d_phi(&full, &zero_ideal));
    m.check(beta <= &phi / &two, || format!("full vs I({{0}}): d_beta {beta} > d_phi/2 {}", &phi / &two));
    Verdict::new(
        m.bad == 0,
        format!("{}; for reference {}", m.summary("d_beta <= d_phi/2"), sharp.summary("d_beta <= 2x-4x^2/3")),
    )
}

fn criterion_4() -> Verdict {
    let two_thirds = q(2, 3);
    let mut m = Mismatches::new();
    for (a, b) in fell_pairs() {
        let beta = d_beta(&a, &b).expect("finite difference");
        m.check(beta <= two_thirds, || format!("{a} | {b}: {beta}"));
    }
    // sum_n 2^-n sum_{k<=n} 2^-k = sum_n (2^-n - 4^-n), each inner sum exact
    let series = afideal::exact::geom_block(1, afideal::exact::Upper::Infinity).expect("infinite")
        - afideal::exact::geom_block_scaled(2, 1, afideal::exact::Upper::Infinity).expect("infinite");
    // oracle: the explicit double sum to depth 64 and its tail bound
    let partial: ExactRational = (1..=64usize)
        .map(|n| (1..=n).map(|k| p2(n + k)).sum::<ExactRational>())
        .sum();
    let bracketed = partial <= two_thirds && two_thirds <= &partial + &p2(64);
    Verdict::new(
        m.bad == 0 && series == two_thirds && bracketed,
        format!("{}; double series = {series}; depth-64 partial brackets 2/3: {bracketed}", m.summary("d_beta <= 2/3")),
    )
}

fn criterion_5() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut phi = Mismatches::new();
    let mut beta = Mismatches::new();
    let mut haus = Mismatches::new();
    fn axioms(ab: &ExactRational, ba: &ExactRational, bc: &ExactRational, ac: &ExactRational, same: bool) -> bool {
        ab.is_zero() == same && ab == ba && ac <= &(ab + bc)
    }
    for _ in 0..1000 {
        let (a, b, c) = (random_descriptor(&mut rng), random_descriptor(&mut rng), random_descriptor(&mut rng));
        let ok = axioms(&d_phi(&a, &b), &d_phi(&b, &a), &d_phi(&b, &c), &d_phi(&a, &c), a == b);
        phi.check(ok, || format!("{a} | {b} | {c}"));

        let f = random_descriptor_family(&mut rng, 3);
        let d = |x, y| d_beta(x, y).expect("shared tail");
        let ok = axioms(&d(&f[0], &f[1]), &d(&f[1], &f[0]), &d(&f[1], &f[2]), &d(&f[0], &f[2]), f[0] == f[1]);
        beta.check(ok, || format!("{} | {} | {}", f[0], f[1], f[2]));

        let s: Vec<ClosedSubsetQI> = (0..3).map(|_| random_nonempty_closed_set(&mut rng)).collect();
        let h = |x, y| hausdorff(x, y).expect("nonempty");
        let ok = axioms(&h(&s[0], &s[1]), &h(&s[1], &s[0]), &h(&s[1], &s[2]), &h(&s[0], &s[2]), s[0] == s[1]);
        haus.check(ok, || format!("{} | {} | {}", s[0], s[1], s[2]));
    }
    Verdict::new(
        phi.bad + beta.bad + haus.bad == 0,
        [phi.summary("d_phi"), beta.summary("d_beta"), haus.summary("d_H")].join("; "),
    )
}

/// Brute-force level set for an arbitrary eventually periodic closed set:
/// a summand lies in the ideal iff its support misses the set. Summand `k < p`
/// is supported at `x_k`; the tail summand `p` on `[0, x_p]`.
fn brute_level(s: &ClosedSubsetQI, p: usize) -> IndexSet {
    let hits_tail = s.contains_zero() || (p..=p + 64).any(|j| s.contains(QIPoint::Index(j)));
    (1..p)
        .filter(|&k| !s.contains(QIPoint::Index(k)))
        .chain((!hits_tail).then_some(p))
        .collect()
}

fn criterion_6() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let mut levels = Mismatches::new();
    let mut round = Mismatches::new();
    for _ in 0..200 {
        let s = random_closed_set(&mut rng);
        let e = ideal_of_closed_set(&s);
        let ok = (1..=12).all(|p| e.level_set(p) == brute_level(&s, p));
        levels.check(ok, || format!("{s}"));
        round.check(closed_set_of_ideal(&e).as_ref() == Ok(&s), || format!("{s}"));
    }
    Verdict::new(
        levels.bad + round.bad == 0,
        [levels.summary("levels p<=12"), round.summary("round trip")].join("; "),
    )
}

fn criterion_7() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut m = Mismatches::new();
    for _ in 0..200 {
        let f = random_descriptor_family(&mut rng, 2);
        let exact = d_beta(&f[0], &f[1]).expect("shared tail");
        let mut prev = None;
        let mut ok = true;
        for depth in 1..=32 {
            let iv = d_beta_truncated(&f[0], &f[1], depth).expect("unbounded");
            ok &= iv.width() == p2(depth) && iv.contains(&exact);
            if let Some(p) = &prev {
                ok &= afideal::metrics::CertifiedValue::encloses(p, &iv);
            }
            prev = Some(iv);
        }
        m.check(ok, || format!("{} | {}", f[0], f[1]));
    }
    Verdict::new(m.bad == 0, m.summary("width/nesting/containment over N=1..32"))
}

fn criterion_8() -> Verdict {
    let zero = ClosedSubsetQI::from_points([QIPoint::Zero]);
    let target = ideal_of_closed_set(&zero);
    let mut ok = true;
    let mut prev: Option<[ExactRational; 3]> = None;
    let mut notes = Vec::new();
    for r in 1..=12usize {
        let s = ClosedSubsetQI::dyadic([r]);
        let e = ideal_of_closed_set(&s);
        let cur = [
            d_hausdorff_ideal(&e, &target).expect("nonempty"),
            d_phi(&e, &target),
            d_beta(&e, &target).expect("finite difference"),
        ];
        let want = p2(2 * r) / ExactRational::from_integer(3);
        let idx = r + 1;
        let lo = oracle_beta_partial(|p| support_level(&[idx], false, p), |p| support_level(&[], true, p), 60);
        let bracket = lo <= want && want <= &lo + &p2(60);
        ok &= cur[2] == want && bracket && cur.iter().all(|v| !v.is_zero());
        if let Some(p) = &prev {
            ok &= p.iter().zip(&cur).all(|(a, b)| b < a);
        }
        if r == 1 || r == 12 {
            notes.push(format!("r={r}: ({}, {}, {})", cur[0], cur[1], cur[2]));
        }
        prev = Some(cur);
    }
    // the distances tend to zero: each is at most 2^-r
    let last = prev.expect("twelve terms");
    ok &= last.iter().all(|v| v <= &p2(12));
    Verdict::new(ok, format!("(d_H, d_phi, d_beta) {}; d_beta = 4^-r/3 = depth-60 oracle", notes.join(", ")))
}

fn main() -> ExitCode {
    let results = [
        run("criterion 1 (paper table, exact)", Some(Duration::from_secs(1)), criterion_1),
        run("criterion 2 (closed-form sweeps)", Some(Duration::from_secs(5)), criterion_2),
        run("criterion 3 (d_beta <= d_phi/2)", None, criterion_3),
        run("criterion 4 (global bound 2/3)", None, criterion_4),
        run("criterion 5 (metric axioms)", None, criterion_5),
        run("criterion 6 (oracle equivalence)", None, criterion_6),
        run("criterion 7 (certified truncation)", None, criterion_7),
        run("criterion 8 (convergence coherence)", None, criterion_8),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
