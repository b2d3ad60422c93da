//! Dense-tableau primal simplex, generic over an exact field type.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use super::{LPSolution, Prepared, Rational, Uniqueness};

/// Numeric operations the tableau needs; `None` signals overflow.
trait Field: Clone + PartialOrd + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_big(v: &Rational) -> Option<Self>;
    fn to_big(&self) -> Rational;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + CheckedDiv + fmt::Debug + FromBig,
{
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_big(v: &Rational) -> Option<Self> {
        Some(Ratio::new_raw(T::from_big(v.numer())?, T::from_big(v.denom())?))
    }
    fn to_big(&self) -> Rational {
        Rational::new(self.numer().to_big(), self.denom().to_big())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
}

trait FromBig: Sized {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl FromBig for i128 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl FromBig for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

#[derive(Debug)]
struct Overflow;

macro_rules! ck {
    ($e:expr) => {
        $e.ok_or(Overflow)?
    };
}

/// Dense tableau in `≤` form: rows `B⁻¹A | B⁻¹b`, plus the reduced-cost row.
#[derive(Debug, Clone)]
struct Tableau<F> {
    rows: Vec<Vec<F>>,
    rhs: Vec<F>,
    /// Reduced costs `c_j − c_B B⁻¹ A_j` (maximization: entering needs > 0).
    reduced: Vec<F>,
    /// Objective value at the current basis.
    value: F,
    basis: Vec<usize>,
    /// Columns barred from entering.
    frozen: Vec<bool>,
    pivots: usize,
}

impl<F: Field> Tableau<F> {
    fn build(a: &[Vec<(usize, Rational)>], b: &[Rational], c: &[Rational]) -> Result<Self, Overflow> {
        let m = a.len();
        let n = c.len();
        let width = n + m;
        let mut rows = Vec::with_capacity(m);
        for (i, coeffs) in a.iter().enumerate() {
            let mut row = vec![F::zero(); width];
            for (j, v) in coeffs {
                row[*j] = ck!(F::from_big(v));
            }
            row[n + i] = F::one();
            rows.push(row);
        }
        let rhs = b.iter().map(|v| F::from_big(v).ok_or(Overflow)).collect::<Result<_, _>>()?;
        let mut reduced = vec![F::zero(); width];
        for (j, v) in c.iter().enumerate() {
            reduced[j] = ck!(F::from_big(v));
        }
        Ok(Tableau {
            rows,
            rhs,
            reduced,
            value: F::zero(),
            basis: (n..n + m).collect(),
            frozen: vec![false; width],
            pivots: 0,
        })
    }

    fn width(&self) -> usize {
        self.reduced.len()
    }

    fn entering(&self, bland: bool) -> Option<usize> {
        let candidates = (0..self.width()).filter(|&j| !self.frozen[j] && self.reduced[j].is_positive());
        if bland {
            return candidates.into_iter().next();
        }
        let mut best: Option<usize> = None;
        for j in candidates {
            if best.is_none_or(|b| self.reduced[j] > self.reduced[b]) {
                best = Some(j);
            }
        }
        best
    }

    /// Minimum-ratio row for column `q`; ties go to the smallest basic index.
    fn leaving(&self, q: usize) -> Result<Option<usize>, Overflow> {
        let mut best: Option<(usize, F)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if !row[q].is_positive() {
                continue;
            }
            let ratio = ck!(self.rhs[i].div(&row[q]));
            let better = match &best {
                None => true,
                Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        Ok(best.map(|(i, _)| i))
    }

    fn pivot(&mut self, r: usize, q: usize) -> Result<(), Overflow> {
        let p = self.rows[r][q].clone();
        if !(p == F::one()) {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v = ck!(v.div(&p));
                }
            }
            self.rhs[r] = ck!(self.rhs[r].div(&p));
        }
        let support: Vec<usize> = (0..self.width()).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let prow = std::mem::take(&mut self.rows[r]);
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][q].is_zero() {
                continue;
            }
            let f = self.rows[i][q].clone();
            for &j in &support {
                let delta = ck!(f.mul(&prow[j]));
                self.rows[i][j] = ck!(self.rows[i][j].sub(&delta));
            }
            self.rhs[i] = ck!(self.rhs[i].sub(&ck!(f.mul(&prhs))));
        }
        if !self.reduced[q].is_zero() {
            let f = self.reduced[q].clone();
            for &j in &support {
                let delta = ck!(f.mul(&prow[j]));
                self.reduced[j] = ck!(self.reduced[j].sub(&delta));
            }
            self.value = ck!(self.value.add(&ck!(f.mul(&prhs))));
        }
        self.rows[r] = prow;
        self.basis[r] = q;
        self.pivots += 1;
        Ok(())
    }

    /// Largest-coefficient pivoting, switching to Bland's rule after a
    /// degenerate pivot until the objective strictly improves again. Cycling
    /// needs an unbroken run of degenerate pivots, which Bland's rule rules out.
    fn optimize(&mut self) -> Result<(), Overflow> {
        let mut bland = false;
        while let Some(q) = self.entering(bland) {
            let r = self
                .leaving(q)?
                .expect("LP is bounded by construction; an unbounded ray is a bug");
            let degenerate = self.rhs[r].is_zero();
            self.pivot(r, q)?;
            bland = degenerate;
        }
        Ok(())
    }

    fn primal(&self, n: usize) -> Vec<F> {
        let mut x = vec![F::zero(); n];
        for (i, &j) in self.basis.iter().enumerate() {
            if j < n {
                x[j] = self.rhs[i].clone();
            }
        }
        x
    }

    /// Replaces the objective by `c` (structural columns only) and rebuilds the
    /// reduced-cost row for the current basis.
    fn set_objective(&mut self, c: &[F]) -> Result<(), Overflow> {
        let n = c.len();
        let cost = |j: usize| if j < n { c[j].clone() } else { F::zero() };
        let mut reduced: Vec<F> = (0..self.width()).map(cost).collect();
        let mut value = F::zero();
        for (i, &bj) in self.basis.iter().enumerate() {
            let cb = cost(bj);
            if cb.is_zero() {
                continue;
            }
            for (j, a) in self.rows[i].iter().enumerate() {
                if !a.is_zero() {
                    reduced[j] = ck!(reduced[j].sub(&ck!(cb.mul(a))));
                }
            }
            value = ck!(value.add(&ck!(cb.mul(&self.rhs[i]))));
        }
        self.reduced = reduced;
        self.value = value;
        Ok(())
    }
}

fn solve_in<F: Field>(p: &Prepared, uniqueness: bool) -> Result<(LPSolution, Option<Uniqueness>), Overflow> {
    let n = p.c.len();
    let mut t: Tableau<F> = Tableau::build(&p.a, &p.b, &p.c)?;
    t.optimize()?;
    let x: Vec<Rational> = t.primal(n).iter().map(F::to_big).collect();
    let sol = LPSolution::new(x, t.value.to_big(), t.basis.clone(), t.pivots);
    if !uniqueness {
        return Ok((sol, None));
    }

    let in_basis = {
        let mut v = vec![false; t.width()];
        t.basis.iter().for_each(|&j| v[j] = true);
        v
    };
    let ties: Vec<usize> = (0..t.width())
        .filter(|&j| !in_basis[j] && t.reduced[j].is_zero())
        .collect();
    if ties.is_empty() {
        return Ok((sol, Some(Uniqueness::Unique)));
    }
    if sol.is_integral {
        // Restrict to the optimal face by freezing every nonbasic column with
        // a negative reduced cost, then maximize the L1 distance from x*,
        // which is linear because x* sits at the bounds 0/1.
        let mut face = t.clone();
        for j in 0..face.width() {
            face.frozen[j] = !in_basis[j] && face.reduced[j].is_negative();
        }
        let minus_one = ck!(F::zero().sub(&F::one()));
        let dist: Vec<F> = sol
            .x
            .iter()
            .map(|v| if Zero::is_zero(v) { F::one() } else { minus_one.clone() })
            .collect();
        face.set_objective(&dist)?;
        let start = face.value.clone();
        face.optimize()?;
        let verdict = if face.value > start {
            Uniqueness::Alternative
        } else {
            Uniqueness::Unique
        };
        return Ok((sol, Some(verdict)));
    }
    // Fractional vertex: probe each tied column.
    for &q in &ties {
        if let Some(r) = t.leaving(q)? {
            if t.rhs[r].is_positive() {
                return Ok((sol, Some(Uniqueness::Alternative)));
            }
        } else {
            return Ok((sol, Some(Uniqueness::Alternative)));
        }
    }
    Ok((sol, Some(Uniqueness::Ambiguous)))
}

pub(super) fn solve_prepared(p: &Prepared, uniqueness: bool) -> (LPSolution, Option<Uniqueness>) {
    match solve_in::<Ratio<i128>>(p, uniqueness) {
        Ok(r) => r,
        Err(Overflow) => solve_in::<Ratio<BigInt>>(p, uniqueness)
            .unwrap_or_else(|_| unreachable!("arbitrary precision does not overflow")),
    }
}

