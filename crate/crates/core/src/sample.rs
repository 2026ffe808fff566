//! Seeded random generators for words, closed sets and descriptors.

use rand::Rng;

use crate::bratteli::{EventualDescriptor, IndexSet};
use crate::exact::BinaryWord;
use crate::qi::ClosedSubsetQI;

fn bits<R: Rng + ?Sized>(rng: &mut R, len: usize, density: f64) -> Vec<bool> {
    (0..len).map(|_| rng.gen_bool(density)).collect()
}

/// Word with head length `< max_head` and period length in `1..=max_period`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, max_head: usize, max_period: usize) -> BinaryWord {
    let hl = rng.gen_range(0..max_head.max(1));
    let pl = rng.gen_range(1..=max_period.max(1));
    let density = rng.gen_range(0.2..0.8);
    BinaryWord::new(bits(rng, hl, density), bits(rng, pl, density))
}

pub fn random_finite_word<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> BinaryWord {
    let len = rng.gen_range(0..=max_len);
    let density = rng.gen_range(0.2..0.8);
    BinaryWord::finite(bits(rng, len, density))
}

/// Mix of finite sets with and without `0` and infinite eventually periodic sets.
pub fn random_closed_set<R: Rng + ?Sized>(rng: &mut R) -> ClosedSubsetQI {
    match rng.gen_range(0..10) {
        0..=3 => ClosedSubsetQI::new(random_finite_word(rng, 8), false),
        4..=5 => ClosedSubsetQI::new(random_finite_word(rng, 8), true),
        _ => ClosedSubsetQI::from_word(random_word(rng, 6, 4)),
    }
}

pub fn random_nonempty_closed_set<R: Rng + ?Sized>(rng: &mut R) -> ClosedSubsetQI {
    loop {
        let s = random_closed_set(rng);
        if !s.is_empty() {
            return s;
        }
    }
}

fn random_head<R: Rng + ?Sized>(rng: &mut R, max_levels: usize) -> Vec<IndexSet> {
    let levels = rng.gen_range(0..=max_levels);
    (1..=levels)
        .map(|p| (1..=p).filter(|_| rng.gen_bool(0.5)).collect())
        .collect()
}

/// Arbitrary descriptor over the quantized-interval shape; not necessarily an ideal.
pub fn random_descriptor<R: Rng + ?Sized>(rng: &mut R) -> EventualDescriptor {
    let head = random_head(rng, 6);
    let word = random_word(rng, 8, 4);
    EventualDescriptor::new(head, word, rng.gen_bool(0.5)).expect("head levels fit widths")
}

/// Descriptors whose excluded words share one periodic tail, so every pairwise
/// symmetric difference is eventually constant.
pub fn random_descriptor_family<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<EventualDescriptor> {
    let hl = rng.gen_range(0..8);
    let pl = rng.gen_range(1..=4);
    let period = bits(rng, pl, 0.5);
    (0..count)
        .map(|_| {
            let word = BinaryWord::new(bits(rng, hl, 0.5), period.clone());
            EventualDescriptor::new(random_head(rng, 6), word, rng.gen_bool(0.5))
                .expect("head levels fit widths")
        })
        .collect()
}
