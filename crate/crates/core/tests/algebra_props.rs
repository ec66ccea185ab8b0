use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use scrollfam::field::{Field, PrimeField, Rational, Rationals};
use scrollfam::form::{form_divide_exact, form_gcd, form_resultant, BinaryForm};
use scrollfam::matrix::{bareiss_rank_kernel, gauss_rank_kernel, Matrix};

const P: u64 = 10007;

fn fp() -> PrimeField {
    PrimeField::new(P).unwrap()
}

// Schoolbook elimination mod p on plain integers.
fn naive_rank_mod_p(rows: &[Vec<i64>]) -> usize {
    let p = P as i128;
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| (x as i128).rem_euclid(p)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] * inv % p;
                for j in 0..cols {
                    m[r][j] = (m[r][j] - f * m[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i128, mut e: i128, p: i128) -> i128 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

// Elimination over BigRational directly, without the crate's field layer.
fn naive_rank_q(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, piv);
        for r in rank + 1..m.len() {
            if !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for j in 0..cols {
                    let t = &f * &m[rank][j];
                    m[r][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn int_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max, 0usize..4).prop_flat_map(|(r, c, low_rank)| {
        // products of thin factors give rank-deficient matrices often enough
        let k = if low_rank == 0 { 1 } else { r.min(c) };
        (
            prop::collection::vec(prop::collection::vec(-6i64..=6, k), r),
            prop::collection::vec(prop::collection::vec(-6i64..=6, c), k),
            prop::collection::vec(prop::collection::vec(-2i64..=2, c), r),
            Just(low_rank),
        )
            .prop_map(|(a, b, noise, low)| {
                let mut m = vec![vec![0i64; b[0].len()]; a.len()];
                for i in 0..a.len() {
                    for j in 0..b[0].len() {
                        m[i][j] = (0..b.len()).map(|l| a[i][l] * b[l][j]).sum::<i64>();
                        if low == 3 {
                            m[i][j] = noise[i][j];
                        }
                    }
                }
                m
            })
    })
}

fn to_matrix<F: Field>(f: F, rows: &[Vec<i64>]) -> Matrix<F> {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Matrix::from_int_rows(f, &refs)
}

fn form<F: Field>(f: F, c: &[i64]) -> BinaryForm<F> {
    BinaryForm::from_ints(f, c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_matches_oracle_fp(rows in int_matrix(12)) {
        let m = to_matrix(fp(), &rows);
        let rk = m.rank_kernel();
        prop_assert_eq!(rk.rank, naive_rank_mod_p(&rows));
        prop_assert_eq!(rk.rank + rk.kernel.len(), m.cols());
        for v in &rk.kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.value() == 0));
        }
    }

    #[test]
    fn rank_matches_oracle_q(rows in int_matrix(12)) {
        let m = to_matrix(Rationals, &rows);
        let rk = m.rank_kernel();
        prop_assert_eq!(rk.rank, naive_rank_q(&rows));
        prop_assert_eq!(rk.rank + rk.kernel.len(), m.cols());
        for v in &rk.kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.0.is_zero()));
        }
        prop_assert_eq!(bareiss_rank_kernel(&m).rank, gauss_rank_kernel(&m).rank);
    }

    #[test]
    fn determinant_and_inverse(rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 5), 5)) {
        let m = to_matrix(Rationals, &rows);
        let det = m.determinant();
        match m.inverse() {
            Some(inv) => {
                prop_assert!(!det.0.is_zero());
                prop_assert_eq!(m.mul(&inv), Matrix::identity(Rationals, 5));
            }
            None => prop_assert!(det.0.is_zero()),
        }
        // integer matrix, integer determinant bounded by Hadamard
        prop_assert!(det.0.is_integer());
        prop_assert!(det.0.abs() <= BigRational::from_integer(BigInt::from(5i64.pow(5) * 56)));
    }

    #[test]
    fn encode_decode_round_trip(num in -10_000i64..10_000, den in 1i64..500, v in 0u64..P) {
        let q = Rationals;
        let x = Rational::new(num, den);
        prop_assert_eq!(q.decode(&q.encode(&x)).unwrap(), x);
        let f = fp();
        let y = f.elem(v);
        prop_assert_eq!(f.decode(&f.encode(&y)).unwrap(), y);
    }

    #[test]
    fn product_divides_exactly(a in prop::collection::vec(-9i64..=9, 1..6), b in prop::collection::vec(-9i64..=9, 1..6)) {
        let (f, g) = (form(Rationals, &a), form(Rationals, &b));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let h = f.mul(&g);
        prop_assert_eq!(h.degree(), f.degree() + g.degree());
        prop_assert_eq!(form_divide_exact(&h, &g).unwrap(), f);
    }

    #[test]
    fn gcd_divides_both(a in prop::collection::vec(-9i64..=9, 1..5), b in prop::collection::vec(-9i64..=9, 1..5), c in prop::collection::vec(-9i64..=9, 1..4)) {
        let common = form(fp(), &c);
        let f = form(fp(), &a).mul(&common);
        let g = form(fp(), &b).mul(&common);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let d = form_gcd(&f, &g).unwrap();
        prop_assert!(form_divide_exact(&f, &d).is_ok());
        prop_assert!(form_divide_exact(&g, &d).is_ok());
        prop_assert!(form_divide_exact(&d, &common).is_ok());
        // resultant vanishes exactly when the gcd is non-constant
        prop_assert_eq!(form_resultant(&f, &g).value() == 0, d.degree() > 0);
    }

    #[test]
    fn evaluation_is_multiplicative(a in prop::collection::vec(-9i64..=9, 1..6), b in prop::collection::vec(-9i64..=9, 1..6), s0 in -20i64..20, s1 in -20i64..20) {
        let q = Rationals;
        let (f, g) = (form(q, &a), form(q, &b));
        let pt = [q.from_i64(s0), q.from_i64(s1)];
        prop_assert_eq!(f.mul(&g).eval(&pt), f.eval(&pt) * g.eval(&pt));
    }
}
