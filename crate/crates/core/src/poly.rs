//! Exact univariate polynomials over the integers and rationals, and real
//! root isolation on `(0, 1)` with Sturm sequences.
//!
//! Coefficients are stored lowest degree first and kept trimmed (no
//! trailing zeros); the zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntPoly = Vec<BigInt>;
type RatPoly = Vec<BigRational>;

fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn binomial_row(k: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for i in 0..k {
        let next = &row[i] * BigInt::from(k - i) / BigInt::from(i + 1);
        row.push(next);
    }
    row
}

/// Converts `sum_i d_i p^i (1-p)^{m-i}` into the power basis.
pub fn from_reliability_basis(d: &[BigInt]) -> IntPoly {
    let m = d.len().saturating_sub(1);
    let mut out = vec![BigInt::zero(); m + 1];
    for (i, di) in d.iter().enumerate() {
        if di.is_zero() {
            continue;
        }
        // (1-p)^{m-i} = sum_j C(m-i, j) (-1)^j p^j
        for (j, c) in binomial_row(m - i).into_iter().enumerate() {
            let term = di * c;
            if j % 2 == 0 {
                out[i + j] += term;
            } else {
                out[i + j] -= term;
            }
        }
    }
    trim(&mut out);
    out
}

pub fn eval_int(p: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

fn eval_rat(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn eval_f64(p: &[BigInt], x: f64) -> f64 {
    let mut acc = 0.0;
    for c in p.iter().rev() {
        acc = acc * x + big_to_f64(c);
    }
    acc
}

pub(crate) fn big_to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

fn to_rat(p: &[BigInt]) -> RatPoly {
    p.iter().cloned().map(BigRational::from_integer).collect()
}

fn derivative(p: &[BigRational]) -> RatPoly {
    let mut d: RatPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut d);
    d
}

/// Quotient and remainder of `a / b` over the rationals; `b` nonzero.
fn divrem(a: &[BigRational], b: &[BigRational]) -> (RatPoly, RatPoly) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let factor = rem.last().unwrap() / lead;
        for (i, bc) in b.iter().enumerate() {
            let t = &factor * bc;
            rem[shift + i] -= t;
        }
        quot[shift] = factor;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

fn monic(p: RatPoly) -> RatPoly {
    match p.last().cloned() {
        Some(lead) => p.into_iter().map(|c| c / &lead).collect(),
        None => p,
    }
}

fn gcd(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = monic(r);
    }
    monic(x)
}

/// `p / gcd(p, p')`: same roots, all simple.
fn square_free(p: &[BigRational]) -> RatPoly {
    let d = derivative(p);
    if d.is_empty() {
        return p.to_vec();
    }
    let g = gcd(p, &d);
    let (q, r) = divrem(p, &g);
    debug_assert!(r.is_empty());
    q
}

fn sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

struct Sturm(Vec<RatPoly>);

impl Sturm {
    fn new(p: &[BigRational]) -> Self {
        let mut seq = vec![p.to_vec(), derivative(p)];
        while !seq.last().unwrap().is_empty() {
            let k = seq.len();
            let (_, r) = divrem(&seq[k - 2], &seq[k - 1]);
            seq.push(r.into_iter().map(|c| -c).collect());
        }
        seq.pop();
        Sturm(seq)
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in self.0.iter().map(|q| sign(&eval_rat(q, x))) {
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }
}

/// A real root of a polynomial isolated in `(lo, hi)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IsolatedRoot {
    /// Bracket after refinement, of width below the requested tolerance.
    pub lo: f64,
    pub hi: f64,
    /// Midpoint of the refined bracket.
    pub value: f64,
    /// Whether the polynomial changes sign across the root (odd multiplicity).
    pub sign_change: bool,
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn rat_to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// All distinct real roots of `p` strictly inside `(0, 1)`, ascending,
/// each refined to a bracket narrower than `tol`. Requires `p(0) != 0` and
/// `p(1) != 0`; returns an empty list for the zero polynomial.
pub fn roots_in_unit_interval(p: &[BigInt], tol: f64) -> Vec<IsolatedRoot> {
    let mut poly = p.to_vec();
    trim(&mut poly);
    if poly.len() <= 1 {
        return Vec::new();
    }
    let full = to_rat(&poly);
    let free = square_free(&full);
    let sturm = Sturm::new(&free);
    let zero = BigRational::zero();
    let one = BigRational::one();
    assert!(
        !eval_rat(&free, &zero).is_zero() && !eval_rat(&free, &one).is_zero(),
        "roots_in_unit_interval needs nonzero values at 0 and 1"
    );

    // Split until every interval holds at most one root.
    let mut isolated: Vec<(BigRational, BigRational)> = Vec::new();
    let mut stack = vec![(zero, one)];
    while let Some((a, b)) = stack.pop() {
        let count = sturm.variations(&a) - sturm.variations(&b);
        match count {
            0 => {}
            1 => isolated.push((a, b)),
            _ => {
                let width = &b - &a;
                let mid = [rat(1, 2), rat(1, 3), rat(2, 3), rat(2, 5), rat(3, 5)]
                    .into_iter()
                    .map(|f| &a + &width * f)
                    .find(|x| !eval_rat(&free, x).is_zero())
                    .expect("a polynomial cannot vanish at five distinct points of a root gap");
                stack.push((mid.clone(), b));
                stack.push((a, mid));
            }
        }
    }
    isolated.sort_by(|x, y| x.0.cmp(&y.0));

    let tol_rat = BigRational::from_float(tol).unwrap_or_else(|| rat(1, 1_000_000_000_000));
    isolated
        .into_iter()
        .map(|(a0, b0)| {
            let sign_change = sign(&eval_rat(&full, &a0)) != sign(&eval_rat(&full, &b0));
            let (mut a, mut b) = (a0, b0);
            let mut sa = sign(&eval_rat(&free, &a));
            while &b - &a > tol_rat {
                let mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
                let sm = sign(&eval_rat(&free, &mid));
                if sm == 0 {
                    a = mid.clone();
                    b = mid;
                    break;
                }
                if sm == sa {
                    a = mid;
                    sa = sm;
                } else {
                    b = mid;
                }
            }
            let (lo, hi) = (rat_to_f64(&a), rat_to_f64(&b));
            IsolatedRoot {
                lo,
                hi,
                value: rat_to_f64(&((&a + &b) / BigRational::from_integer(BigInt::from(2)))),
                sign_change,
            }
        })
        .collect()
}

/// Makes an integer polynomial primitive with a positive leading coefficient.
pub fn primitive(p: &[BigInt]) -> IntPoly {
    let mut out = p.to_vec();
    trim(&mut out);
    let content = out.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return out;
    }
    let sign = if out.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    out.iter().map(|c| c / &content * &sign).collect()
}
