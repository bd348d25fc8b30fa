//! Frame generation: exhaustive enumeration for small world counts (with
//! isomorph pruning) and seeded random sampling with closure repair.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::frame::{Frame, TernaryRel};
use super::laws::{check_condition, frame_satisfies, FrameCondition};

/// All reflexive-transitive relations on `0..n` as up-masks.
fn preorders(n: usize) -> Vec<Vec<u32>> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).filter(move |b| a != *b).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    'cand: for bits in 0u32..(1 << pairs.len()) {
        let mut up = vec![0u32; n];
        for (a, m) in up.iter_mut().enumerate() {
            *m |= 1 << a;
        }
        for (i, (a, b)) in pairs.iter().enumerate() {
            if bits & (1 << i) != 0 {
                up[*a] |= 1 << b;
            }
        }
        for a in 0..n {
            for b in 0..n {
                if up[a] & (1 << b) != 0 && up[a] | up[b] != up[a] {
                    continue 'cand;
                }
            }
        }
        out.push(up);
    }
    out
}

fn rel_is_closed(rel: &TernaryRel, up: &[u32], n: usize) -> bool {
    for (a, b, c) in rel.triples() {
        for a2 in 0..n {
            if up[a] & (1 << a2) != 0 && !rel.holds(a2, b, c) {
                return false;
            }
        }
        for b2 in 0..n {
            if up[b] & (1 << b2) != 0 && !rel.holds(a, b2, c) {
                return false;
            }
        }
        for c2 in 0..n {
            if up[c2] & (1 << c) != 0 && !rel.holds(a, b, c2) {
                return false;
            }
        }
    }
    true
}

// A total encoding of the frame for canonicalization under world renaming.
fn encode(frame: &Frame) -> Vec<u64> {
    let n = frame.worlds();
    let mut out = Vec::new();
    let mut word = 0u64;
    let mut bits = 0;
    let mut push_bit = |out: &mut Vec<u64>, b: bool| {
        word = (word << 1) | u64::from(b);
        bits += 1;
        if bits == 64 {
            out.push(word);
            word = 0;
            bits = 0;
        }
    };
    for a in 0..n {
        for b in 0..n {
            push_bit(&mut out, frame.leq(a, b));
        }
    }
    for w in 0..n {
        push_bit(&mut out, frame.unit_set() & (1 << w) != 0);
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                push_bit(&mut out, frame.rel_l().holds(a, b, c));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                push_bit(&mut out, frame.rel_r().holds(a, b, c));
            }
        }
    }
    if bits > 0 {
        out.push(word << (64 - bits));
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for slot in 0..n {
            let mut p = rest.clone();
            p.insert(slot, n - 1);
            out.push(p);
        }
    }
    out
}

fn apply_permutation(frame: &Frame, perm: &[usize]) -> Frame {
    let n = frame.worlds();
    let leq: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| frame.leq(a, b))
        .map(|(a, b)| (perm[a], perm[b]))
        .collect();
    let unit: Vec<usize> =
        (0..n).filter(|w| frame.unit_set() & (1 << w) != 0).map(|w| perm[w]).collect();
    let map_rel = |rel: &TernaryRel| {
        let triples: Vec<(usize, usize, usize)> = rel
            .triples()
            .into_iter()
            .map(|(a, b, c)| (perm[a], perm[b], perm[c]))
            .collect();
        TernaryRel::from_triples(n, &triples)
    };
    Frame::new(n, &leq, &unit, map_rel(frame.rel_l()), map_rel(frame.rel_r()))
        .expect("permutation preserves well-formedness")
}

/// True if the frame is the least representative of its renaming class.
pub fn is_canonical(frame: &Frame) -> bool {
    let own = encode(frame);
    permutations(frame.worlds())
        .iter()
        .all(|perm| encode(&apply_permutation(frame, perm)) >= own)
}

/// Exhaustively enumerates all validated frames over `n` worlds, pruning
/// renaming-isomorphs. Feasible for `n <= 2` only: the closed ternary
/// relation space explodes beyond that.
pub fn enumerate_frames(n: usize) -> Vec<Frame> {
    assert!(
        (1..=2).contains(&n),
        "exhaustive frame enumeration is only feasible for 1 or 2 worlds"
    );
    let mut out = Vec::new();
    for up in preorders(n) {
        let leq: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| up[a] & (1 << b) != 0)
            .collect();
        // Closed ternary relations under this order.
        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
            .collect();
        let mut rels = Vec::new();
        for bits in 0u32..(1 << triples.len()) {
            let chosen: Vec<(usize, usize, usize)> = triples
                .iter()
                .enumerate()
                .filter(|(i, _)| bits & (1 << i) != 0)
                .map(|(_, t)| *t)
                .collect();
            let rel = TernaryRel::from_triples(n, &chosen);
            if rel_is_closed(&rel, &up, n) {
                rels.push(rel);
            }
        }
        for unit_mask in 0u32..(1 << n) {
            let unit: Vec<usize> = (0..n).filter(|w| unit_mask & (1 << w) != 0).collect();
            let probe = Frame::new(n, &leq, &unit, TernaryRel::empty(n), TernaryRel::empty(n))
                .expect("in-range by construction");
            if !probe.is_valid() {
                continue;
            }
            for rel_l in &rels {
                for rel_r in &rels {
                    let frame = Frame::new(n, &leq, &unit, rel_l.clone(), rel_r.clone())
                        .expect("in-range by construction");
                    debug_assert!(frame.is_valid());
                    if is_canonical(&frame) {
                        out.push(frame);
                    }
                }
            }
        }
    }
    out
}

fn close_rel(rel: &TernaryRel, frame_up: &[u32], frame_down: &[u32], n: usize) -> TernaryRel {
    // Upward saturation in the first two arguments, downward in the third.
    let mut out = TernaryRel::empty(n);
    for a in 0..n {
        for b in 0..n {
            let mut image = 0u32;
            for a0 in 0..n {
                if frame_up[a0] & (1 << a) == 0 {
                    continue;
                }
                for b0 in 0..n {
                    if frame_up[b0] & (1 << b) != 0 {
                        image |= rel.image(a0, b0);
                    }
                }
            }
            let mut closed = image;
            for c in 0..n {
                if image & (1 << c) != 0 {
                    closed |= frame_down[c];
                }
            }
            for c in 0..n {
                if closed & (1 << c) != 0 {
                    out.insert(a, b, c);
                }
            }
        }
    }
    out
}

/// A seeded random validated frame: random preorder (transitively closed),
/// random downward-closed unit set, random left relation saturated to the
/// monotonicity closures, right relation derived by LR-reverse.
pub fn random_frame(n: usize, seed: u64) -> Frame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Preorder: sprinkle pairs, then reflexive-transitive closure.
    let mut up = vec![0u32; n];
    for (a, m) in up.iter_mut().enumerate() {
        *m |= 1 << a;
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.gen_bool(0.25) {
                up[a] |= 1 << b;
            }
        }
    }
    loop {
        let mut changed = false;
        for a in 0..n {
            for b in 0..n {
                if up[a] & (1 << b) != 0 && up[a] | up[b] != up[a] {
                    up[a] |= up[b];
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut down = vec![0u32; n];
    for a in 0..n {
        for b in 0..n {
            if up[a] & (1 << b) != 0 {
                down[b] |= 1 << a;
            }
        }
    }
    // Unit set: random, then downward closure.
    let mut unit_mask = 0u32;
    for w in 0..n {
        if rng.gen_bool(0.4) {
            unit_mask |= 1 << w;
        }
    }
    let mut unit_closed = unit_mask;
    for w in 0..n {
        if unit_mask & (1 << w) != 0 {
            unit_closed |= down[w];
        }
    }
    // Left relation: random triples, then saturation.
    let mut rel_l = TernaryRel::empty(n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if rng.gen_bool(0.25) {
                    rel_l.insert(a, b, c);
                }
            }
        }
    }
    let rel_l = close_rel(&rel_l, &up, &down, n);
    let leq: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| up[a] & (1 << b) != 0)
        .collect();
    let unit: Vec<usize> = (0..n).filter(|w| unit_closed & (1 << w) != 0).collect();
    let frame = Frame::new(n, &leq, &unit, rel_l, TernaryRel::empty(n))
        .expect("in-range by construction")
        .derive_rel_r();
    debug_assert!(frame.is_valid(), "closure repair must produce a valid frame");
    frame
}

/// A seeded random SkMBiCA frame: a random frame steered toward the
/// left-skew conditions (unit witnesses seeded before saturation, LSLU and
/// LSA by rejection). Returns `None` when the attempt fails the checks.
pub fn random_skmbica_frame(n: usize, seed: u64) -> Option<Frame> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_cafe);
    let base = random_frame(n, seed);
    let up: Vec<u32> = (0..n)
        .map(|a| (0..n).filter(|b| base.leq(a, *b)).fold(0, |m, b| m | (1 << b)))
        .collect();
    let down: Vec<u32> = (0..n)
        .map(|b| (0..n).filter(|a| base.leq(*a, b)).fold(0, |m, a| m | (1 << a)))
        .collect();
    // Ensure a nonempty unit set and an LSRU witness for every world.
    let mut unit_mask = base.unit_set();
    if unit_mask == 0 {
        let w = rng.gen_range(0..n);
        unit_mask = (1 << w) | down[w];
    }
    let mut rel = TernaryRel::empty(n);
    for (a, b, c) in base.rel_l().triples() {
        rel.insert(a, b, c);
    }
    for a in 0..n {
        let witness = (0..n).find(|e| unit_mask & (1 << e) != 0 && rel.holds(a, *e, a));
        if witness.is_none() {
            let e = (0..n).find(|e| unit_mask & (1 << e) != 0).expect("unit is nonempty");
            rel.insert(a, e, a);
        }
    }
    let rel_l = close_rel(&rel, &up, &down, n);
    let leq: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| up[a] & (1 << b) != 0)
        .collect();
    let unit: Vec<usize> = (0..n).filter(|w| unit_mask & (1 << w) != 0).collect();
    let frame = Frame::new(n, &leq, &unit, rel_l, TernaryRel::empty(n))
        .expect("in-range by construction")
        .derive_rel_r();
    if !frame.is_valid() {
        return None;
    }
    if frame_satisfies(&frame, FrameCondition::skmbica_set()) {
        Some(frame)
    } else {
        None
    }
}

/// Collects `count` seeded SkMBiCA frames over `1..=max_worlds` worlds,
/// deterministically per seed.
pub fn sample_skmbica_frames(max_worlds: usize, count: usize, seed: u64) -> Vec<Frame> {
    let mut out = Vec::new();
    let mut tick = 0u64;
    while out.len() < count {
        let n = 1 + (tick as usize) % max_worlds;
        if let Some(f) = random_skmbica_frame(n, seed.wrapping_add(tick)) {
            debug_assert!(check_condition(&f, FrameCondition::RSA).holds());
            out.push(f);
        }
        tick += 1;
        assert!(tick < 1_000_000, "SkMBiCA frame sampling should not starve");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::laws::{self, StructuralLaw};

    #[test]
    fn one_world_enumeration_is_the_eight_frames() {
        // leq is forced; the unit bit, L(0,0,0) and R(0,0,0) are free.
        let frames = enumerate_frames(1);
        assert_eq!(frames.len(), 8);
        for f in &frames {
            assert!(f.is_valid());
        }
    }

    #[test]
    fn two_world_enumeration_is_valid_and_canonical() {
        let frames = enumerate_frames(2);
        assert!(!frames.is_empty());
        for f in frames.iter().take(500) {
            assert!(f.is_valid());
            assert!(is_canonical(f));
        }
    }

    #[test]
    fn random_frames_validate_and_satisfy_lr_reverse() {
        for seed in 0..100 {
            let f = random_frame(3, seed);
            assert!(f.is_valid(), "seed {seed} gave an invalid frame");
            assert!(
                check_condition(&f, FrameCondition::LRReverse).holds(),
                "derived R must satisfy LR-reverse"
            );
        }
    }

    #[test]
    fn random_frame_is_deterministic_per_seed() {
        assert_eq!(random_frame(4, 42), random_frame(4, 42));
        assert_ne!(random_frame(4, 42), random_frame(4, 43));
    }

    #[test]
    fn skmbica_samples_satisfy_axioms_semantically() {
        let frames = sample_skmbica_frames(3, 20, 7);
        assert_eq!(frames.len(), 20);
        for f in &frames {
            for law in [
                StructuralLaw::Lambda,
                StructuralLaw::Rho,
                StructuralLaw::Alpha,
                StructuralLaw::Gamma,
                StructuralLaw::GammaInv,
                StructuralLaw::LambdaR,
                StructuralLaw::RhoR,
                StructuralLaw::AlphaR,
            ] {
                assert!(laws::law_valid(f, law).valid(), "{law} must hold on SkMBiCA frames");
            }
        }
    }

    #[test]
    fn lr_reverse_pairs_conditions_across_relations() {
        // On derived frames: LSA(L) ⟷ RSA(R), LSLU(L) ⟷ RSRU(R),
        // LSRU(L) ⟷ RSLU(R).
        for seed in 0..60 {
            let f = random_frame(3, seed * 31 + 1);
            let pairs = [
                (FrameCondition::LSA, FrameCondition::RSA),
                (FrameCondition::LSLU, FrameCondition::RSRU),
                (FrameCondition::LSRU, FrameCondition::RSLU),
            ];
            for (l, r) in pairs {
                assert_eq!(
                    check_condition(&f, l).holds(),
                    check_condition(&f, r).holds(),
                    "seed {seed}: {l} and {r} must agree under LR-reverse"
                );
            }
        }
    }
}
