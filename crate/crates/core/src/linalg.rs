//! Dense square matrices and exact determinants.

use std::collections::HashMap;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::poly::LaurentPolynomial;
use crate::scalar::{ExactRing, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![T::zero(); n * n] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    /// Deletes row `r` and column `c`.
    pub fn minor(&self, r: usize, c: usize) -> Self {
        let mut data = Vec::with_capacity((self.n.saturating_sub(1)).pow(2));
        for i in (0..self.n).filter(|&i| i != r) {
            for j in (0..self.n).filter(|&j| j != c) {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { n: self.n - 1, data }
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self[(i, j)] == -self[(j, i)].clone()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.n {
            self.data.swap(a * self.n + j, b * self.n + j);
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

/// Fraction-free (Bareiss) elimination with row pivoting.
///
/// Every intermediate entry is a minor of the input, so the division by the
/// previous pivot is exact in any integral domain.
pub fn bareiss_determinant<T: ExactRing>(m: &Matrix<T>) -> T {
    let n = m.size();
    if n == 0 {
        return T::one();
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        let pivot = a[(k, k)].clone();
        for i in k + 1..n {
            let lead = a[(i, k)].clone();
            for j in k + 1..n {
                let num = a[(i, j)].clone() * pivot.clone() - lead.clone() * a[(k, j)].clone();
                a[(i, j)] = num.exact_div(&prev).expect("Bareiss quotient is exact in an integral domain");
            }
            a[(i, k)] = T::zero();
        }
        prev = pivot;
    }
    let det = a[(n - 1, n - 1)].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Laplace expansion along rows, memoised over the set of used columns.
///
/// Independent of elimination and valid over any commutative ring; cost is
/// `O(n 2^n)` ring operations, so keep it to small matrices.
pub fn cofactor_determinant<T: Ring>(m: &Matrix<T>) -> T {
    let n = m.size();
    assert!(n <= 24, "cofactor expansion is exponential; n = {n} is too large");
    fn go<T: Ring>(m: &Matrix<T>, row: usize, used: u32, memo: &mut HashMap<u32, T>) -> T {
        let n = m.size();
        if row == n {
            return T::one();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = T::zero();
        let mut free_before = 0usize;
        for c in 0..n {
            if used & (1 << c) != 0 {
                continue;
            }
            let entry = &m[(row, c)];
            if !entry.is_zero() {
                let sub = go(m, row + 1, used | (1 << c), memo);
                let term = entry.clone() * sub;
                acc = if free_before.is_multiple_of(2) { acc + term } else { acc - term };
            }
            free_before += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }
    go(m, 0, 0, &mut HashMap::new())
}

/// Determinant of a Laurent-polynomial matrix by evaluation and interpolation.
///
/// Entries are first multiplied by `x^s` so every exponent is nonnegative;
/// the determinant is then a polynomial of degree at most the sum of the
/// per-row maximum exponents, which is recovered exactly from that many
/// integer evaluations plus one (Newton divided differences over the
/// rationals). The evaluations are independent and run in parallel.
pub fn interpolation_determinant(m: &Matrix<LaurentPolynomial<BigInt>>) -> LaurentPolynomial<BigInt> {
    let n = m.size();
    if n == 0 {
        return LaurentPolynomial::one();
    }
    let lowest = m.data.iter().filter_map(|p| p.low_exponent()).min();
    let Some(lowest) = lowest else {
        return LaurentPolynomial::zero();
    };
    let shift = -lowest.min(0);
    let shifted = m.map(|p| p.shift(shift));
    let mut degree: i64 = 0;
    for i in 0..n {
        let row_max = (0..n).filter_map(|j| shifted[(i, j)].high_exponent()).max();
        match row_max {
            Some(d) => degree += d,
            None => return LaurentPolynomial::zero(),
        }
    }
    let points: Vec<BigInt> = (0..=degree).map(BigInt::from).collect();
    let values: Vec<BigInt> = points
        .par_iter()
        .map(|x| {
            let numeric = shifted.map(|p| p.evaluate(x).expect("shifted exponents are nonnegative"));
            bareiss_determinant(&numeric)
        })
        .collect();
    let coeffs = newton_interpolate(&points, &values);
    LaurentPolynomial::from_dense(0, coeffs).shift(-(n as i64) * shift)
}

/// Coefficients (ascending degree) of the unique polynomial through the
/// given points; panics if the interpolant is not integral.
fn newton_interpolate(xs: &[BigInt], ys: &[BigInt]) -> Vec<BigInt> {
    let k = xs.len();
    let mut table: Vec<BigRational> = ys.iter().map(|y| BigRational::from_integer(y.clone())).collect();
    for level in 1..k {
        for i in (level..k).rev() {
            let num = table[i].clone() - table[i - 1].clone();
            let den = BigRational::from_integer(xs[i].clone() - xs[i - level].clone());
            table[i] = num / den;
        }
    }
    // Horner-style expansion of the Newton form into monomial coefficients.
    let mut coeffs: Vec<BigRational> = vec![BigRational::zero(); k];
    for i in (0..k).rev() {
        // coeffs <- coeffs * (x - xs[i]) + table[i]
        let mut next = vec![BigRational::zero(); k];
        for d in 0..k {
            if coeffs[d].is_zero() {
                continue;
            }
            if d + 1 < k {
                next[d + 1] = next[d + 1].clone() + coeffs[d].clone();
            }
            next[d] = next[d].clone() - coeffs[d].clone() * BigRational::from_integer(xs[i].clone());
        }
        next[0] = next[0].clone() + table[i].clone();
        coeffs = next;
    }
    coeffs
        .into_iter()
        .map(|c| {
            assert!(c.is_integer(), "interpolated determinant has a non-integral coefficient");
            c.to_integer()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gf2;
    use proptest::prelude::*;

    fn int_matrix(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    #[test]
    fn empty_determinant_is_one() {
        let m: Matrix<BigInt> = Matrix::zeros(0);
        assert_eq!(bareiss_determinant(&m), BigInt::one());
        assert_eq!(cofactor_determinant(&m), BigInt::one());
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let m = int_matrix(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        // expanded by hand: 0*(0+9) - 1*(8-12) + 2*(-3-0) = 4 - 6 = -2
        assert_eq!(bareiss_determinant(&m), BigInt::from(-2));
        assert_eq!(cofactor_determinant(&m), BigInt::from(-2));
    }

    #[test]
    fn singular_matrix() {
        let m = int_matrix(&[&[1, 2], &[2, 4]]);
        assert_eq!(bareiss_determinant(&m), BigInt::zero());
    }

    #[test]
    fn gf2_determinant() {
        let m = Matrix::from_rows(vec![vec![Gf2(false), Gf2(true)], vec![Gf2(true), Gf2(false)]]);
        assert_eq!(bareiss_determinant(&m), Gf2(true));
    }

    #[test]
    fn skew_two_by_two_polynomial() {
        let x5 = LaurentPolynomial::monomial(BigInt::one(), 5);
        let m =
            Matrix::from_rows(vec![vec![LaurentPolynomial::zero(), x5.clone()], vec![-x5, LaurentPolynomial::zero()]]);
        let expect = LaurentPolynomial::monomial(BigInt::one(), 10);
        assert_eq!(bareiss_determinant(&m), expect);
        assert_eq!(cofactor_determinant(&m), expect);
        assert_eq!(interpolation_determinant(&m), expect);
    }

    #[test]
    fn newton_recovers_cubic() {
        let xs: Vec<BigInt> = (0..4).map(BigInt::from).collect();
        // 2 - x + 3x^3
        let ys: Vec<BigInt> = (0..4i64).map(|x| BigInt::from(2 - x + 3 * x * x * x)).collect();
        let c = newton_interpolate(&xs, &ys);
        assert_eq!(c, vec![2, -1, 0, 3].into_iter().map(BigInt::from).collect::<Vec<_>>());
    }

    fn arb_poly_matrix(n: usize) -> impl Strategy<Value = Matrix<LaurentPolynomial<BigInt>>> {
        prop::collection::vec(prop::collection::vec((-3i64..4, -2i64..3), 0..3), n * n).prop_map(move |cells| {
            let rows = cells
                .chunks(n)
                .map(|row| {
                    row.iter()
                        .map(|ts| LaurentPolynomial::from_terms(ts.iter().map(|&(e, c)| (e, BigInt::from(c)))))
                        .collect()
                })
                .collect();
            Matrix::from_rows(rows)
        })
    }

    proptest! {
        #[test]
        fn three_strategies_agree(m in (1usize..5).prop_flat_map(arb_poly_matrix)) {
            let a = bareiss_determinant(&m);
            let b = cofactor_determinant(&m);
            let c = interpolation_determinant(&m);
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(&a, &c);
        }

        #[test]
        fn integer_bareiss_matches_cofactor(rows in prop::collection::vec(prop::collection::vec(-9i64..10, 5), 5)) {
            let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect());
            prop_assert_eq!(bareiss_determinant(&m), cofactor_determinant(&m));
        }
    }
}
