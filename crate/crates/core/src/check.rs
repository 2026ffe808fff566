//! Seeded property suites behind the `check` subcommand.
//!
//! Each suite draws its cases from its own generator, seeded from the run seed
//! and the suite's position, so adding cases to one suite leaves the others
//! unchanged. Output depends only on the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bratteli::{
    ideal_closure, is_ideal, qi_diagram, symdiff_level, EventualDescriptor, FiniteDescriptor, LevelSets,
};
use crate::exact::{geom_block, pow2, word_weight, ExactRational, Upper};
use crate::metrics::{
    closed_form_dbeta, closed_form_dhausdorff, closed_form_dphi, d_beta, d_beta_truncated, d_hausdorff_ideal,
    d_phi, dbeta_fell_bound, table_sum_dbeta,
};
use crate::qi::{
    closed_set_of_ideal, hausdorff, hausdorff_cutoff, ideal_of_closed_set, paper_table_descriptor, support_level_oracle, ClosedSubsetQI, PaperSet, QIPoint,
};
use crate::sample::{
    random_closed_set, random_descriptor, random_descriptor_family, random_nonempty_closed_set, random_word,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub module: &'static str,
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Informational comparison against a published value; never fails the run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub name: &'static str,
    pub cases: usize,
    pub mismatches: usize,
    pub example: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
    pub discrepancies: Vec<Discrepancy>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }

    pub fn render(&self) -> String {
        let mut out = format!("check seed={}\n", self.seed);
        for s in &self.suites {
            out.push_str(&format!(
                "{} {}::{} cases={} failures={}\n",
                if s.passed() { "PASS" } else { "FAIL" },
                s.module,
                s.name,
                s.cases,
                s.failures
            ));
            if let Some(msg) = &s.first_failure {
                out.push_str(&format!("  first failure: {msg}\n"));
            }
        }
        for d in &self.discrepancies {
            out.push_str(&format!(
                "NOTE {} mismatches={}/{}",
                d.name, d.mismatches, d.cases
            ));
            if let Some(ex) = &d.example {
                out.push_str(&format!(" e.g. {ex}"));
            }
            out.push('\n');
        }
        let failed = self.suites.iter().filter(|s| !s.passed()).count();
        out.push_str(&format!(
            "summary: {} suites, {} passed, {} failed\n",
            self.suites.len(),
            self.suites.len() - failed,
            failed
        ));
        out
    }
}

struct Tally {
    cases: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Self {
            cases: 0,
            failures: 0,
            first: None,
        }
    }

    fn record(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(msg());
            }
        }
    }

    fn finish(self, module: &'static str, name: &'static str) -> SuiteResult {
        SuiteResult {
            module,
            name,
            cases: self.cases,
            failures: self.failures,
            first_failure: self.first,
        }
    }
}

type Suite = fn(&mut ChaCha8Rng) -> SuiteResult;

const SUITES: &[Suite] = &[
    geom_block_vs_loop,
    word_weight_recurrence,
    exact_add_sub,
    closure_idempotent_monotone,
    eventual_prefix_extends,
    symdiff_width_bound,
    hausdorff_axioms,
    hausdorff_cutoff_soundness,
    hausdorff_closed_form,
    derived_descriptors_are_ideals,
    antitone_correspondence,
    support_oracle_and_round_trip,
    d_phi_axioms,
    d_beta_axioms,
    d_hausdorff_ideal_axioms,
    dbeta_sharp_bound,
    global_bounds,
    paper_table_closed_forms,
    truncation_soundness,
    convergence_to_zero_ideal,
];

/// Runs every suite. `inject_violation` appends a suite that always fails.
pub fn run_checks(seed: u64, inject_violation: bool) -> CheckReport {
    let mut suites: Vec<SuiteResult> = SUITES
        .iter()
        .enumerate()
        .map(|(i, suite)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((i as u64 + 1) << 32));
            suite(&mut rng)
        })
        .collect();
    if inject_violation {
        let mut t = Tally::new();
        t.record(false, || "injected violation".into());
        suites.push(t.finish("check", "injected_violation"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    CheckReport {
        seed,
        suites,
        discrepancies: published_discrepancies(&mut rng),
    }
}

fn geom_block_vs_loop(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new();
    for _ in 0..300 {
        let a = rng.gen_range(1..=40u64);
        let b = rng.gen_range(a..=40u64);
        let looped: ExactRational = (a..=b).map(|p| pow2(-(p as i64))).sum();
        let got = geom_block(a, Upper::Finite(b)).expect("a <= b");
        t.record(got == looped, || format!("a={a} b={b}: {got} vs {looped}"));
    }
    t.finish("exact", "geom_block_vs_loop")
}

fn word_weight_recurrence(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new();
    for _ in 0..40 {
        let w = random_word(rng, 8, 5);
        for i in 1..=100 {
            let bit = if w.bit(i) { pow2(-(i as i64)) } else { ExactRational::zero() };
            let ok = word_weight(&w, i) == bit + word_weight(&w, i + 1);
            t.record(ok, || format!("{w} at {i}"));
        }
    }
    t.finish("exact", "word_weight_recurrence")
}

fn exact_add_sub(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new();
    for _ in 0..500 {
        let x = ExactRational::new(rng.gen_range(-1000..1000), rng.gen_range(1..1000));
        let y = ExactRational::new(rng.gen_range(-1000..1000), rng.gen_range(1..1000));
        t.record((&x + &y) - &y == x, || format!("x={x} y={y}"));
    }
    t.finish("exact", "add_sub_inverse")
}

fn random_seed(rng: &mut ChaCha8Rng, depth: usize) -> FiniteDescriptor {
    FiniteDescriptor::new(
        (1..=depth)
            .map(|p| (1..=p).filter(|_| rng.gen_bool(0.15)).collect())
            .collect(),
    )
    .expect("positive depth")
}

fn closure_idempotent_monotone(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new();
    let d = qi_diagram(8);
    for _ in 0..200 {
        let small = random_seed(rng, 8);
        let extra = random_seed(rng, 8);
        let big = FiniteDescriptor::new(
            small.sets().iter().zip(extra.sets()).map(|(a, b)| a.union(b)).collect(),
        )
        .expect("positive depth");
        let c_small = ideal_closure(&d, &small).expect("fits diagram");
        let c_big = ideal_closure(&d, &big).expect("fits diagram");
        let ok = is_ideal(&d, &c_small).unwrap_or(false)
            && small.is_contained_in(&c_small)
            && ideal_closure(&d, &c_small).as_ref() == Ok(&c_small)
            && c_small.is_contained_in(&c_big);
        t.record(ok, || format!("seed {:?}", small.sets()));
    }
    t.finish("bratteli", "closure_idempotent_monotone")
}

fn eventual_prefix_extends(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new();
    let mut tested = 0;
    while tested < 150 {
        let e = if rng.gen_bool(0.5) {
            ideal_of_closed_set(&random_closed_set(rng))
        } else {
            random_descriptor(rng)
        };
        let short = e.p0() + 2 * e.excluded().period_len() + 4;
        if e.is_ideal_prefix(short) {
            tested += 1;
            t.record(e.is_ideal_prefix(64), || format!("{e}"));
        }
    }
    t.finish("bratteli", "eventual_prefix_extends")
}

fn symdiff_width_bound(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new();
    for _ in 0..200 {
        let (a, b) = (random_descriptor(rng), random_descriptor(rng));
        for p in 1..=32 {
            let n = symdiff_level(&a, &b, p).len();
            t.record(n <= p, || format!("{a} vs {b} at {p}: {n}"));
        }
    }
    t.finish("bratteli", "symdiff_width_bound")
}

fn hausdorff_axioms(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new();
    for _ in 0..500 {
        let (a, b, c) = (
            random_nonempty_closed_set(rng),
            random_nonempty_closed_set(rng),
            random_nonempty_closed_set(rng),
        );
        let ab = hausdorff(&a, &b).expect("nonempty");
        let ba = hausdorff(&b, &a).expect("nonempty");
        let bc = hausdorff(&b, &c).expect("nonempty");
        let ac = hausdorff(&a, &c).expect("nonempty");
        let ok = (ab.is_zero() == (a == b)) && ab == ba && ac <= &ab + &bc;
        t.record(ok, || format!("{a} | {b} | {c}"));
    }
    t.finish("qi", "hausdorff_metric_axioms")
}

/// Directed sup by scanning every index up to `depth`, plus 0.
pub fn brute_directed(s: &ClosedSubsetQI, t: &ClosedSubsetQI, depth: usize) -> ExactRational {
    s.points_up_to(depth)
        .into_iter()
        .map(|x| match x {
            QIPoint::Zero if t.contains_zero() => ExactRational::zero(),
            _ => {
                let xv = x.value();
                t.points_up_to(depth)
                    .into_iter()
                    .map(|y| (&xv - &y.value()).abs())
                    .min()
                    .expect("nonempty target")
            }
        })
        .max()
        .unwrap_or_else(ExactRational::zero)
}

fn hausdorff_cutoff_soundness(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new();
    for _ in 0..300 {
        let (a, b) = (random_nonempty_closed_set(rng), random_nonempty_closed_set(rng));
        let depth = hausdorff_cutoff(&a, &b) + 32;
        let brute = brute_directed(&a, &b, depth).max(brute_directed(&b, &a, depth));
        let got = hausdorff(&a, &b).expect("nonempty");
        // truncating the infinite target can only overestimate distances by at most 2^(1-depth)
        let ok = got <= brute && brute <= &got + &pow2(1 - depth as i64);
        t.record(ok, || format!("{a} | {b}: {got} vs {brute}"));
    }
    t.finish("qi", "hausdorff_cutoff_soundness")
}

fn hausdorff_closed_form(_: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new();
    for m in 1..=8 {
        for n in 1..=8 {
            for k in 1..=8 {
                let a = ClosedSubsetQI::dyadic([m]);
                let b = ClosedSubsetQI::dyadic([n, n + k]);
                let got = hausdorff(&a, &b).expect("nonempty");
                let want = closed_form_dhausdorff(m, n, k);
                t.record(got == want, || format!("m={m} n={n} k={k}: {got} vs {want}"));
            }
        }
    }
    t.finish("qi", "hausdorff_closed_form")
}

fn derived_descriptors_are_ideals(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new();
    for _ in 0..200 {
        let s = random_closed_set(rng);
        t.record(ideal_of_closed_set(&s).is_ideal_prefix(32), || format!("{s}"));
    }
    t.finish("qi", "derived_descriptors_are_ideals")
}

fn antitone_correspondence(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new();
    for _ in 0..200 {
        let s = random_closed_set(rng);
        let big = s.union(&random_closed_set(rng));
        let (is, ib) = (ideal_of_closed_set(&s), ideal_of_closed_set(&big));
        let ok = (1..=32).all(|p| ib.level_set(p).is_subset(&is.level_set(p)));
        t.record(ok, || format!("{s} within {big}"));
    }
    t.finish("qi", "antitone_correspondence")
}

fn support_oracle_and_round_trip(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new();
    for _ in 0..200 {
        let s = random_closed_set(rng);
        let e = ideal_of_closed_set(&s);
        let levels_ok = (1..=12).all(|p| e.level_set(p) == support_level_oracle(&s, p));
        let round = closed_set_of_ideal(&e).as_ref() == Ok(&s);
        t.record(levels_ok && round, || format!("{s}"));
    }
    t.finish("qi", "support_oracle_and_round_trip")
}

fn d_phi_axioms(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new();
    for _ in 0..1000 {
        let (a, b, c) = (random_descriptor(rng), random_descriptor(rng), random_descriptor(rng));
        let ab = d_phi(&a, &b);
        let ok = (ab.is_zero() == (a == b))
            && ab == d_phi(&b, &a)
            && d_phi(&a, &c) <= &ab + &d_phi(&b, &c);
        t.record(ok, || format!("{a} | {b} | {c}"));
    }
    t.finish("metrics", "d_phi_metric_axioms")
}

fn d_beta_axioms(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new();
    for _ in 0..1000 {
        let fam = random_descriptor_family(rng, 3);
        let (a, b, c) = (&fam[0], &fam[1], &fam[2]);
        let ok = match (d_beta(a, b), d_beta(b, a), d_beta(b, c), d_beta(a, c)) {
            (Ok(ab), Ok(ba), Ok(bc), Ok(ac)) => (ab.is_zero() == (a == b)) && ab == ba && ac <= &ab + &bc,
            _ => false,
        };
        t.record(ok, || format!("{a} | {b} | {c}"));
    }
    t.finish("metrics", "d_beta_metric_axioms")
}

fn d_hausdorff_ideal_axioms(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new();
    for _ in 0..1000 {
        let ideals: Vec<EventualDescriptor> = (0..3)
            .map(|_| ideal_of_closed_set(&random_nonempty_closed_set(rng)))
            .collect();
        let (a, b, c) = (&ideals[0], &ideals[1], &ideals[2]);
        let d = |x, y| d_hausdorff_ideal(x, y).expect("derived, nonempty");
        let ab = d(a, b);
        let ok = (ab.is_zero() == (a == b)) && ab == d(b, a) && d(a, c) <= &ab + &d(b, c);
        t.record(ok, || format!("{a} | {b} | {c}"));
    }
    t.finish("metrics", "d_hausdorff_ideal_metric_axioms")
}

fn dbeta_sharp_bound(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new();
    for _ in 0..1000 {
        let fam = random_descriptor_family(rng, 2);
        let beta = d_beta(&fam[0], &fam[1]).expect("shared tail");
        let bound = dbeta_fell_bound(&d_phi(&fam[0], &fam[1]));
        t.record(beta <= bound, || format!("{} | {}: {beta} > {bound}", fam[0], fam[1]));
    }
    t.finish("metrics", "d_beta_sharp_phi_bound")
}

fn global_bounds(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new();
    let (two_thirds, half) = (ExactRational::new(2, 3), ExactRational::new(1, 2));
    for _ in 0..1000 {
        let fam = random_descriptor_family(rng, 2);
        let beta = d_beta(&fam[0], &fam[1]).expect("shared tail");
        let phi = d_phi(&fam[0], &fam[1]);
        t.record(beta <= two_thirds && phi <= half, || format!("{} | {}", fam[0], fam[1]));
    }
    // full vs zero differs in every summand, so only the truncated value is available
    let extreme = d_beta_truncated(&EventualDescriptor::full(), &EventualDescriptor::zero(), 40)
        .expect("unbounded depth");
    t.record(
        extreme.contains(&two_thirds) && extreme.lo() < &two_thirds,
        || format!("full vs zero encloses {extreme}"),
    );
    t.finish("metrics", "global_bounds")
}

fn paper_table_closed_forms(_: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new();
    for m in 1..=8 {
        for n in 1..=8 {
            for k in 1..=8 {
                let a = paper_table_descriptor(PaperSet::Singleton { m });
                let b = paper_table_descriptor(PaperSet::Pair { n, k });
                let phi = d_phi(&a, &b);
                if m != n {
                    t.record(phi == closed_form_dphi(m, n, k), || format!("d_phi m={m} n={n} k={k}: {phi}"));
                }
                if m < n {
                    let beta = d_beta(&a, &b).expect("finite difference");
                    let want = table_sum_dbeta(m, n, k).expect("m < n");
                    t.record(beta == want, || format!("d_beta m={m} n={n} k={k}: {beta} vs {want}"));
                }
            }
        }
    }
    t.finish("metrics", "paper_table_closed_forms")
}

fn truncation_soundness(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new();
    for _ in 0..200 {
        let fam = random_descriptor_family(rng, 2);
        let exact = d_beta(&fam[0], &fam[1]).expect("shared tail");
        let mut prev: Option<crate::metrics::CertifiedValue> = None;
        let mut ok = true;
        for depth in 1..=24 {
            let iv = d_beta_truncated(&fam[0], &fam[1], depth).expect("unbounded depth");
            ok &= iv.width() == pow2(-(depth as i64)) && iv.contains(&exact);
            if let Some(p) = &prev {
                ok &= p.encloses(&iv);
            }
            prev = Some(iv);
        }
        t.record(ok, || format!("{} | {}", fam[0], fam[1]));
    }
    t.finish("metrics", "truncation_soundness")
}

fn convergence_to_zero_ideal(_: &mut ChaCha8Rng) -> SuiteResult {
    let mut t = Tally::new();
    let zero_set = ClosedSubsetQI::from_points([QIPoint::Zero]);
    let target = ideal_of_closed_set(&zero_set);
    let mut last: Option<[ExactRational; 3]> = None;
    for r in 1..=12 {
        let e = ideal_of_closed_set(&ClosedSubsetQI::dyadic([r]));
        let beta = d_beta(&e, &target).expect("finite difference");
        let cur = [
            d_hausdorff_ideal(&e, &target).expect("nonempty"),
            d_phi(&e, &target),
            beta.clone(),
        ];
        let want = pow2(-2 * r as i64) / ExactRational::from_integer(3);
        t.record(beta == want, || format!("r={r}: d_beta {beta} vs {want}"));
        if let Some(prev) = &last {
            let ok = prev.iter().zip(&cur).all(|(p, c)| c < p && !c.is_zero());
            t.record(ok, || format!("r={r}: not strictly decreasing"));
        }
        last = Some(cur);
    }
    t.finish("metrics", "convergence_to_zero_ideal")
}

fn published_discrepancies(rng: &mut ChaCha8Rng) -> Vec<Discrepancy> {
    let mut closed = Discrepancy {
        name: "published d_beta closed form vs summed table",
        cases: 0,
        mismatches: 0,
        example: None,
    };
    for m in 1..=8 {
        for n in m + 1..=8 {
            for k in 1..=8 {
                let a = paper_table_descriptor(PaperSet::Singleton { m });
                let b = paper_table_descriptor(PaperSet::Pair { n, k });
                let got = d_beta(&a, &b).expect("finite difference");
                let published = closed_form_dbeta(m, n, k).expect("m < n");
                closed.cases += 1;
                if got != published {
                    closed.mismatches += 1;
                    closed
                        .example
                        .get_or_insert_with(|| format!("m={m} n={n} k={k}: summed {got}, published {published}"));
                }
            }
        }
    }
    let mut half = Discrepancy {
        name: "d_beta <= d_phi/2",
        cases: 0,
        mismatches: 0,
        example: None,
    };
    let two = ExactRational::from_integer(2);
    for _ in 0..1000 {
        let fam = random_descriptor_family(rng, 2);
        let beta = d_beta(&fam[0], &fam[1]).expect("shared tail");
        let phi = d_phi(&fam[0], &fam[1]);
        half.cases += 1;
        if beta > &phi / &two {
            half.mismatches += 1;
            half.example
                .get_or_insert_with(|| format!("d_beta {beta} > d_phi/2 = {}", &phi / &two));
        }
    }
    vec![closed, half]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_seed_passes_and_is_deterministic() {
        let a = run_checks(7, false);
        assert!(a.all_passed(), "{}", a.render());
        assert_eq!(a.render(), run_checks(7, false).render());
    }

    #[test]
    fn injected_violation_fails() {
        let r = run_checks(7, true);
        assert!(!r.all_passed());
        assert!(r.render().contains("FAIL check::injected_violation"));
    }
}
