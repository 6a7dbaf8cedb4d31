#![allow(dead_code)]

use std::collections::BTreeMap;

use curvecal::cobordism::{build_chain, CobordismChain, CriticalRecord};
use curvecal::diagram::{build_diagram, CrossingDiagram};
use curvecal::words::{CurveWord, Letter, Syllable};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_letter<R: Rng>(rng: &mut R, genus: u32) -> Letter {
    let index = rng.gen_range(1..=genus);
    if rng.gen_bool(0.5) {
        Letter::alpha(index)
    } else {
        Letter::beta(index)
    }
}

/// Unreduced single-letter steps, up to `max_len` of them.
pub fn random_steps<R: Rng>(rng: &mut R, genus: u32, max_len: usize) -> Vec<Syllable> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            Syllable::new(random_letter(rng, genus), e)
        })
        .collect()
}

pub fn random_word<R: Rng>(rng: &mut R, genus: u32, max_len: usize) -> CurveWord {
    CurveWord::from_syllables(genus, random_steps(rng, genus, max_len)).unwrap()
}

pub fn coprime(a: u64, b: u64) -> bool {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a == 1
}

fn ids(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i:02}")).collect()
}

/// Uniformly random orders and signs on `n` crossings.
pub fn random_diagram<R: Rng>(rng: &mut R, n: usize) -> CrossingDiagram {
    let m = ids(n);
    let mut mp = m.clone();
    mp.shuffle(rng);
    let signs: BTreeMap<String, i64> = m
        .iter()
        .map(|id| (id.clone(), if rng.gen_bool(0.5) { 1 } else { -1 }))
        .collect();
    build_diagram(m, mp, signs).unwrap()
}

/// A random diagram with opposite-sign pairs spliced in next to each other
/// on both curves, so reduction has real work to do.
pub fn planted_diagram<R: Rng>(rng: &mut R, max_crossings: usize) -> CrossingDiagram {
    let pairs = rng.gen_range(1..=max_crossings / 2);
    let base_n = rng.gen_range(0..=max_crossings - 2 * pairs);
    let base = random_diagram(rng, base_n);
    let mut m = base.m_order().to_vec();
    let mut mp = base.mprime_order().to_vec();
    let mut signs: BTreeMap<String, i64> = m
        .iter()
        .map(|id| (id.clone(), i64::from(base.sign(id).unwrap())))
        .collect();
    for k in 0..pairs {
        let (p, q) = (format!("y{k:02}a"), format!("y{k:02}b"));
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        signs.insert(p.clone(), s);
        signs.insert(q.clone(), -s);
        let at = rng.gen_range(0..=m.len());
        m.splice(at..at, [p.clone(), q.clone()]);
        let at = rng.gen_range(0..=mp.len());
        if rng.gen_bool(0.5) {
            mp.splice(at..at, [p, q]);
        } else {
            mp.splice(at..at, [q, p]);
        }
    }
    build_diagram(m, mp, signs).unwrap()
}

/// A sorted closed chain of type {1,k,k,1} with random 1/2 incidences, plus
/// `extra_min` planted 0/1 pairs and `extra_max` planted 2/3 pairs with unit
/// incidence.
pub fn planted_chain<R: Rng>(
    rng: &mut R,
    k: usize,
    extra_min: usize,
    extra_max: usize,
) -> CobordismChain {
    let mut records = vec![CriticalRecord::new("m0", 0)];
    for e in 0..extra_min {
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        records.push(
            CriticalRecord::new(format!("m{}", e + 1), 0).with_incidence(format!("e1_{e}"), s),
        );
    }
    for e in 0..extra_min {
        records.push(CriticalRecord::new(format!("e1_{e}"), 1));
    }
    for i in 0..k {
        let mut r = CriticalRecord::new(format!("p{i}"), 1);
        for j in 0..k {
            if rng.gen_bool(0.4) {
                r = r.with_incidence(format!("q{j}"), rng.gen_range(-3..=3));
            }
        }
        records.push(r);
    }
    for j in 0..k {
        records.push(CriticalRecord::new(format!("q{j}"), 2));
    }
    for e in 0..extra_max {
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        records.push(
            CriticalRecord::new(format!("e2_{e}"), 2).with_incidence(format!("M{}", e + 1), s),
        );
    }
    records.push(CriticalRecord::new("M0", 3));
    for e in 0..extra_max {
        records.push(CriticalRecord::new(format!("M{}", e + 1), 3));
    }
    build_chain(records).unwrap()
}
