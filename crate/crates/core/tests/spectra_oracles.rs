use polywave_core::{LatticeKind, SpectrumSieve};

const SQ: LatticeKind = LatticeKind::Square;
const TRI: LatticeKind = LatticeKind::Triangular;

fn form_values(kind: LatticeKind, limit: u64) -> Vec<bool> {
    let mut hit = vec![false; limit as usize + 1];
    let r = (limit as f64).sqrt() as i64 + 2;
    for x in -r..=r {
        for y in -r..=r {
            let n = match kind {
                LatticeKind::Square => x * x + y * y,
                LatticeKind::Triangular => x * x + x * y + y * y,
            };
            if n > 0 && n as u64 <= limit {
                hit[n as usize] = true;
            }
        }
    }
    hit
}

fn smallest_factors(limit: usize) -> Vec<usize> {
    let mut spf = vec![0; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            for j in (i..=limit).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i;
                }
            }
        }
    }
    spf
}

fn factor(mut n: usize, spf: &[usize]) -> Vec<(usize, u32)> {
    let mut out: Vec<(usize, u32)> = Vec::new();
    while n > 1 {
        let p = spf[n];
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
        n /= p;
    }
    out
}

#[test]
fn sieve_matches_double_loop() {
    for kind in [SQ, TRI] {
        let limit = 10_000;
        let sieve = SpectrumSieve::build(kind, limit).unwrap();
        let hit = form_values(kind, limit);
        for n in 1..=limit {
            assert_eq!(sieve.is_representable(n), hit[n as usize], "{kind} n={n}");
            let squarefree = (2..=100u64).all(|p| n % (p * p) != 0);
            assert_eq!(sieve.is_squarefree_representable(n), hit[n as usize] && squarefree);
        }
    }
}

#[test]
fn prime_exponent_characterization() {
    let limit = 1_000_000;
    let spf = smallest_factors(limit);
    for (kind, bad_residue, modulus) in [(SQ, 3, 4), (TRI, 2, 3)] {
        let sieve = SpectrumSieve::build(kind, limit as u64).unwrap();
        for n in 1..=limit {
            let expected = factor(n, &spf)
                .iter()
                .all(|&(p, e)| p % modulus != bad_residue || e % 2 == 0);
            assert_eq!(sieve.is_representable(n as u64), expected, "{kind} n={n}");
        }
    }
}

#[test]
fn squarefree_equals_not_a_multiple() {
    let limit = 1_000_000u64;
    for kind in [SQ, TRI] {
        let sieve = SpectrumSieve::build(kind, limit).unwrap();
        for n in 1..=limit {
            if !sieve.is_representable(n) {
                continue;
            }
            // √n = k√m with k ≥ 2 and m representable
            let mut k = 2;
            let mut multiple = false;
            while k * k <= n {
                if n % (k * k) == 0 && sieve.is_representable(n / (k * k)) {
                    multiple = true;
                    break;
                }
                k += 1;
            }
            assert_eq!(sieve.is_squarefree_representable(n), !multiple, "{kind} n={n}");
        }
    }
}

#[test]
fn every_value_reduces_to_a_squarefree_one() {
    let limit = 1_000_000u64;
    for kind in [SQ, TRI] {
        let sieve = SpectrumSieve::build(kind, limit).unwrap();
        for n in 1..=limit {
            if !sieve.is_representable(n) {
                continue;
            }
            let mut m = n;
            let mut p = 2;
            while p * p <= m {
                while m % (p * p) == 0 {
                    m /= p * p;
                }
                p += 1;
            }
            assert!(sieve.is_squarefree_representable(m), "{kind} n={n} m={m}");
        }
    }
}

#[test]
fn counts_are_ordered() {
    let sieve = SpectrumSieve::build(TRI, 40_000).unwrap();
    for i in 0..=200 {
        let l = i as f64;
        assert!(sieve.count_b(l).unwrap() <= sieve.count_a(l).unwrap());
    }
}
