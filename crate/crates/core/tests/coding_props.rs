use std::cmp::Ordering;

use ay_core::coding::{Coding, PeriodicCode};
use ay_core::cycles::enumerate_fixed;
use ay_core::iet::IETTable;
use ay_core::FieldElement;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random element of Q(λ) ∩ [0,1) with denominator at most `max_den`.
pub fn random_point(rng: &mut impl Rng, max_den: i128) -> FieldElement {
    loop {
        let d = rng.gen_range(1..=max_den);
        let num = [0; 3].map(|_| rng.gen_range(-2 * d..=2 * d));
        let x = FieldElement::from_ratio(num, d);
        let shift = x.to_f64().floor() as i64;
        let y = &x - &FieldElement::from_ints(shift, 0, 0);
        if y.in_unit_interval() {
            return y;
        }
    }
}

#[test]
fn round_trip_on_random_points() {
    let coding = Coding::canonical();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..1000 {
        let x = random_point(&mut rng, 50);
        let code = coding.encode_rational(&x).unwrap();
        assert!(!code.has_forbidden_tail(), "{x} ↦ {code}");
        assert_eq!(coding.decode(&code).unwrap(), x, "code {code}");
        if i < 50 {
            // the BigRational path is slow; spot-check it against the lattice path
            assert_eq!(coding.encode_rational_exact(&x).unwrap(), code);
        }
    }
}

#[test]
fn points_lie_in_their_tiles_and_gamma_shifts() {
    let coding = Coding::canonical();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let x = random_point(&mut rng, 30);
        let word = coding.encode(&x, 4).unwrap();
        for k in 1..=4 {
            let tile = coding.tile_of(&word[..k]).unwrap();
            assert!(tile.interval.contains(&x), "{x} not in tile {:?}", &word[..k]);
        }
        let gx = coding.gamma(&x).unwrap();
        assert_eq!(coding.encode(&gx, 3).unwrap(), word[1..4].to_vec());
    }
}

#[test]
fn tiles_partition_the_unit_interval() {
    let coding = Coding::canonical();
    let one = FieldElement::one();
    for level in 1..=4 {
        let mut tiles = coding.tiles(level);
        tiles.sort_by(|a, b| a.interval.lo.to_f64().partial_cmp(&b.interval.lo.to_f64()).unwrap());
        assert_eq!(tiles[0].interval.lo, FieldElement::zero());
        assert_eq!(tiles.last().unwrap().interval.hi, one);
        for w in tiles.windows(2) {
            assert_eq!(w[0].interval.hi, w[1].interval.lo, "gap or overlap at level {level}");
            assert_eq!(w[0].interval.lo.cmp_real(&w[0].interval.hi), Ordering::Less);
        }
        let total = tiles
            .iter()
            .fold(FieldElement::zero(), |acc, t| &acc + &t.interval.length());
        assert_eq!(total, one, "level {level}");
    }
}

#[test]
fn cycles_encode_to_their_codes() {
    let coding = Coding::canonical();
    for n in 1..=4 {
        for c in enumerate_fixed(n, 1).unwrap() {
            let code = coding.encode_rational(&c.x).unwrap();
            assert!(code.is_purely_periodic());
            // the enumerated word may be a power of the least period
            let mut rep = code.period.clone();
            while rep.len() < c.code.period.len() {
                rep.extend_from_slice(&code.period);
            }
            assert_eq!(PeriodicCode::periodic(rep), c.code);
        }
    }
}

#[test]
fn rho_has_no_short_periodic_points() {
    let table = IETTable::canonical();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let x0 = random_point(&mut rng, 20);
        let mut x = x0.clone();
        for k in 1..=50 {
            x = table.rho(&x).unwrap();
            assert_ne!(x, x0, "period {k}");
        }
    }
}

#[test]
fn incidence_powers_count_admissible_loops() {
    let coding = Coding::canonical();
    let a = coding.incidence_matrix();
    assert_eq!(a.trace(), 13);
    // Tr A² = number of admissible closed words of length 2
    let mut loops = 0u128;
    for t in coding.tiles(2) {
        if coding.can_follow(t.symbols[1], t.symbols[0]) {
            loops += 1;
        }
    }
    assert_eq!(loops, a.trace_power(2));
}
