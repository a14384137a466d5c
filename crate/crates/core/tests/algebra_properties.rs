use artin_core::algebra::groebner::{reduce, s_polynomial, unit_ideal_evidence, CHECK_PRIMES};
use artin_core::algebra::{
    buchberger, is_unit_ideal_laurent, matrix_rank, parse_laurent, vars, Cyclotomic, CyclotomicField, Fp, LaurentPoly,
    MonomialOrder, Poly, PolyMatrix, Ring, Vars,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn random_laurent<R: Rng>(rng: &mut R, vs: &Vars, terms: usize, span: i64) -> LaurentPoly<BigInt> {
    let t = (0..rng.gen_range(0..=terms)).map(|_| {
        let e: Vec<i64> = (0..vs.len()).map(|_| rng.gen_range(-span..=span)).collect();
        (e, BigInt::from(rng.gen_range(-6i64..=6)))
    });
    LaurentPoly::from_terms(vs, &(), t)
}

fn random_rational<R: Rng>(rng: &mut R, vs: &Vars, terms: usize, span: i64) -> LaurentPoly<BigRational> {
    random_laurent(rng, vs, terms, span).map_coeffs(&(), |c| BigRational::from_integer(c.clone()))
}

#[test]
fn laurent_ring_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let vs = vars(&["x", "y", "z"]);
    let zero = LaurentPoly::<BigInt>::zero(&vs, &());
    let one = LaurentPoly::<BigInt>::one(&vs, &());
    for _ in 0..500 {
        let a = random_laurent(&mut rng, &vs, 5, 3);
        let b = random_laurent(&mut rng, &vs, 5, 3);
        let c = random_laurent(&mut rng, &vs, 5, 3);
        assert_eq!(&a + &b, &b + &a);
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        assert_eq!(&a - &a, zero);
        assert_eq!(&a * &one, a);
        assert_eq!(&a + &(-&a), zero);
        // Evaluation at a rational point is a ring homomorphism.
        let pt: Vec<BigRational> = (0..3)
            .map(|_| BigRational::new(rng.gen_range(1..5).into(), rng.gen_range(1..4).into()))
            .collect();
        let ev = |p: &LaurentPoly<BigInt>| {
            p.map_coeffs(&(), |c| BigRational::from_integer(c.clone()))
                .evaluate(&pt)
                .unwrap()
        };
        assert_eq!(ev(&(&a * &b)), ev(&a) * ev(&b));
        assert_eq!(ev(&(&a + &b)), ev(&a) + ev(&b));
    }
}

#[test]
fn exact_division_inverts_multiplication() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let vs = vars(&["x", "y"]);
    for _ in 0..200 {
        let a = random_rational(&mut rng, &vs, 4, 2);
        let b = random_rational(&mut rng, &vs, 4, 2);
        if b.is_zero() {
            continue;
        }
        assert_eq!((&a * &b).exact_div(&b), Some(a));
    }
}

#[test]
fn prime_field_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for &p in &CHECK_PRIMES {
        for _ in 0..100 {
            let (a, b, c) = (
                Fp::new(rng.gen_range(-50..50), p),
                Fp::new(rng.gen_range(-50..50), p),
                Fp::new(rng.gen_range(-50..50), p),
            );
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.add(&a.neg()), Fp::zero(&p));
            if !a.is_zero() {
                use artin_core::algebra::Field;
                assert_eq!(a.mul(&a.inv().unwrap()), Fp::one(&p));
            }
        }
    }
}

fn totient(m: u64) -> usize {
    (1..=m).filter(|k| k.gcd(&m) == 1).count()
}

#[test]
fn roots_of_unity_have_exact_order() {
    for m in 1..=24u64 {
        let field = CyclotomicField::new(m);
        assert_eq!(field.degree(), totient(m));
        let zeta = Cyclotomic::zeta_pow(&field, 1);
        let one = Cyclotomic::one(&field);
        assert_eq!(zeta.pow(m as i64), one);
        for d in 1..m {
            assert_ne!(zeta.pow(d as i64), one, "zeta_{m}^{d}");
        }
        assert_eq!(zeta.pow(-1).mul(&zeta), one);
    }
}

#[test]
fn cyclotomic_field_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for m in [3u64, 4, 5, 8, 12] {
        let field = CyclotomicField::new(m);
        let rand_el = |rng: &mut ChaCha8Rng| {
            (0..4).fold(Cyclotomic::zero(&field), |acc, k| {
                let c = Cyclotomic::from_rational(&field, q(rng.gen_range(-3..=3)));
                acc.add(&c.mul(&Cyclotomic::zeta_pow(&field, k)))
            })
        };
        for _ in 0..100 {
            let (a, b, c) = (rand_el(&mut rng), rand_el(&mut rng), rand_el(&mut rng));
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            if !a.is_zero() {
                assert_eq!(a.mul(&a.pow(-1)), Cyclotomic::one(&field));
            }
        }
    }
}

/// Rank of a rational matrix by plain Gaussian elimination.
fn numeric_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !Zero::is_zero(&rows[r][c])) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && !Zero::is_zero(&rows[r][c]) {
                let f = &rows[r][c] / &rows[rank][c];
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn matrix_rank_matches_generic_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    let vs = vars(&["x", "y"]);
    for _ in 0..150 {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let mut rows: Vec<Vec<LaurentPoly<BigRational>>> = (0..r)
            .map(|_| (0..c).map(|_| random_rational(&mut rng, &vs, 3, 2)).collect())
            .collect();
        // Force dependencies now and then.
        if r >= 2 && rng.gen_bool(0.5) {
            let k = random_rational(&mut rng, &vs, 2, 1);
            rows[r - 1] = rows[0].iter().map(|e| e * &k).collect();
        }
        let m = PolyMatrix::new(&vs, &(), c, rows.clone()).unwrap();
        let rank = matrix_rank(&m);
        // A few generic points realize the rank over the fraction field.
        let generic = (0..6)
            .map(|_| {
                let pt = [q(rng.gen_range(2..60)), q(rng.gen_range(2..60))];
                numeric_rank(
                    rows.iter()
                        .map(|row| row.iter().map(|e| e.evaluate(&pt).unwrap()).collect())
                        .collect(),
                )
            })
            .max()
            .unwrap();
        assert_eq!(rank, generic);
        // Row permutation and monomial row scaling preserve the rank.
        let mut permuted = rows.clone();
        permuted.reverse();
        let unit = LaurentPoly::monomial(&vs, &(), vec![-1, 2], q(-3));
        permuted[0] = permuted[0].iter().map(|e| e * &unit).collect();
        assert_eq!(matrix_rank(&PolyMatrix::new(&vs, &(), c, permuted).unwrap()), rank);
    }
}

fn to_polys(gens: &[LaurentPoly<BigRational>], order: MonomialOrder) -> Vec<Poly<BigRational>> {
    gens.iter().map(|g| Poly::from_laurent(g, order).unwrap()).collect()
}

#[test]
fn buchberger_output_is_groebner() {
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    let vs = vars(&["x", "y", "z"]);
    for order in [MonomialOrder::Lex, MonomialOrder::GrLex, MonomialOrder::GRevLex] {
        for _ in 0..25 {
            let gens: Vec<LaurentPoly<BigRational>> = (0..rng.gen_range(1..=3))
                .map(|_| {
                    let t = (0..rng.gen_range(1..=3)).map(|_| {
                        let e: Vec<i64> = (0..3).map(|_| rng.gen_range(0..=2)).collect();
                        (e, q(rng.gen_range(-3..=3)))
                    });
                    LaurentPoly::from_terms(&vs, &(), t)
                })
                .filter(|p| !p.is_zero())
                .collect();
            let polys = to_polys(&gens, order);
            let gb = buchberger(&polys, order);
            for g in &polys {
                assert!(reduce(g, &gb, order).is_zero());
            }
            for i in 0..gb.len() {
                for j in i + 1..gb.len() {
                    assert!(reduce(&s_polynomial(&gb[i], &gb[j], order), &gb, order).is_zero());
                }
            }
        }
    }
}

#[test]
fn unit_ideal_is_invariant_under_monomial_units() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let vs = vars(&["x", "y"]);
    for _ in 0..40 {
        let gens: Vec<LaurentPoly<BigRational>> = (0..2)
            .map(|_| random_rational(&mut rng, &vs, 3, 1))
            .filter(|p| !p.is_zero())
            .collect();
        if gens.is_empty() {
            continue;
        }
        let base = is_unit_ideal_laurent(&gens, &(), &vs, MonomialOrder::GRevLex).unit;
        let shifted: Vec<LaurentPoly<BigRational>> = gens
            .iter()
            .map(|g| g * &LaurentPoly::monomial(&vs, &(), vec![rng.gen_range(-3..=3), rng.gen_range(-3..=3)], q(-2)))
            .collect();
        assert_eq!(
            is_unit_ideal_laurent(&shifted, &(), &vs, MonomialOrder::GRevLex).unit,
            base
        );
        assert_eq!(is_unit_ideal_laurent(&gens, &(), &vs, MonomialOrder::Lex).unit, base);
    }
}

#[test]
fn four_variable_unit_ideal() {
    let vs = vars(&["s", "u", "v", "w"]);
    let gens: Vec<LaurentPoly<BigRational>> = ["1+u*v", "1+s*u+(s*u)^2", "1+v*w", "1+s*w"]
        .iter()
        .map(|t| parse_laurent(t, &vs).unwrap())
        .collect();
    let ev = unit_ideal_evidence(&gens, &vs, MonomialOrder::GRevLex);
    assert!(ev.rational.unit);
    assert_eq!(ev.modular.len(), 5);
    assert!(ev.modular.iter().all(|(_, r)| *r == Some(true)));

    let proper = [parse_laurent("u-1", &vs).unwrap(), parse_laurent("v-1", &vs).unwrap()];
    assert!(!is_unit_ideal_laurent(&proper, &(), &vs, MonomialOrder::GRevLex).unit);
}
