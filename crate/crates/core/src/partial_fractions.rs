//! Partial-fraction decomposition of `Q(n) / P(n)` over a factored, monic
//! denominator.

use std::fmt;

use num_traits::Zero;

use crate::arith::{FactorList, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    /// `sum_{n>=1} t(n)`
    Plain,
    /// `sum_{n>=1} (-1)^(n+1) t(n)`
    Alternating,
}

impl Sign {
    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plain => "plain",
            Sign::Alternating => "alternating",
        }
    }

    /// Required gap between deg P and deg Q for convergence.
    fn degree_gap(self) -> usize {
        match self {
            Sign::Plain => 2,
            Sign::Alternating => 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A convergent series `sum_{n>=1} (+-1) Q(n) / prod (n + a_i)^m_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SumSpec {
    numerator: Polynomial,
    factors: FactorList,
    sign: Sign,
}

impl SumSpec {
    pub fn new(numerator: Polynomial, factors: FactorList, sign: Sign) -> Result<Self> {
        check_degree(&numerator, &factors, sign)?;
        Ok(SumSpec {
            numerator,
            factors,
            sign,
        })
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn factors(&self) -> &FactorList {
        &self.factors
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn denominator(&self) -> Polynomial {
        self.factors.expand()
    }

    /// The summand `Q / P` in reduced form.
    pub fn rational_function(&self) -> RationalFunction {
        RationalFunction::normalize(self.numerator.clone(), self.denominator())
            .expect("expanded factor list is monic")
    }

    /// The summand at `n`, without the alternating sign.
    pub fn term(&self, n: &Rational) -> Rational {
        self.numerator.eval(n) / self.denominator().eval(n)
    }
}

fn check_degree(numerator: &Polynomial, factors: &FactorList, sign: Sign) -> Result<()> {
    let Some(dq) = numerator.degree() else {
        return Ok(());
    };
    let n = factors.degree();
    if dq + sign.degree_gap() > n {
        return Err(Error::DegreeTooHigh {
            numerator: dq,
            denominator: n,
            mode: sign.as_str(),
            gap: sign.degree_gap(),
        });
    }
    Ok(())
}

/// Coefficient `A_ij` of `1 / (n + a_i)^j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PfTerm {
    pub shift: Rational,
    pub order: u32,
    pub coeff: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PartialFractions {
    terms: Vec<PfTerm>,
}

impl PartialFractions {
    pub fn new(terms: Vec<PfTerm>) -> Self {
        PartialFractions { terms }
    }

    pub fn terms(&self) -> &[PfTerm] {
        &self.terms
    }

    pub fn get(&self, shift: &Rational, order: u32) -> Option<&Rational> {
        self.terms
            .iter()
            .find(|t| &t.shift == shift && t.order == order)
            .map(|t| &t.coeff)
    }

    /// `sum_i A_i1`; zero whenever deg Q <= N - 2.
    pub fn simple_pole_sum(&self) -> Rational {
        self.terms
            .iter()
            .filter(|t| t.order == 1)
            .map(|t| &t.coeff)
            .sum()
    }

    /// Smallest shift, if any.
    pub fn min_shift(&self) -> Option<&Rational> {
        self.terms.iter().map(|t| &t.shift).min()
    }

    /// Recombines over a common denominator.
    pub fn recombine(&self) -> RationalFunction {
        self.terms
            .iter()
            .fold(RationalFunction::constant(Rational::zero()), |acc, t| {
                let den = Polynomial::linear(t.shift.clone()).pow(t.order);
                let term = RationalFunction::normalize(Polynomial::constant(t.coeff.clone()), den)
                    .expect("nonzero denominator");
                acc.add(&term)
            })
    }
}

/// Solves for the `A_ij` by matching coefficients of
/// `Q(n) = sum A_ij P(n) / (n + a_i)^j`.
pub fn decompose(spec: &SumSpec) -> Result<PartialFractions> {
    let factors = FactorList::new(spec.factors().factors().to_vec())?;
    check_degree(spec.numerator(), &factors, spec.sign())?;
    let n = factors.degree();
    if n == 0 {
        return Ok(PartialFractions::default());
    }

    let linear: Vec<Polynomial> = factors
        .iter()
        .map(|f| Polynomial::linear(f.shift.clone()))
        .collect();

    let mut columns = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for (i, f) in factors.iter().enumerate() {
        let others = factors
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != i)
            .fold(Polynomial::one(), |acc, (l, g)| &acc * &linear[l].pow(g.multiplicity));
        for j in 1..=f.multiplicity {
            let basis = &others * &linear[i].pow(f.multiplicity - j);
            columns.push((0..n).map(|r| basis.coeff(r)).collect::<Vec<_>>());
            labels.push((f.shift.clone(), j));
        }
    }
    // rows = powers of n, columns = unknowns
    let mut matrix: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(spec.numerator().coeff(r));
            row
        })
        .collect();
    let solution = solve(&mut matrix);

    Ok(PartialFractions::new(
        labels
            .into_iter()
            .zip(solution)
            .map(|((shift, order), coeff)| PfTerm {
                shift,
                order,
                coeff,
            })
            .collect(),
    ))
}

/// Gauss-Jordan elimination on an augmented nonsingular system.
fn solve(m: &mut [Vec<Rational>]) -> Vec<Rational> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("partial-fraction system is nonsingular for distinct shifts");
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let k = m[r][col].clone();
            let (pivot_row, row) = if r < col {
                let (a, b) = m.split_at_mut(col);
                (&b[0], &mut a[r])
            } else {
                let (a, b) = m.split_at_mut(r);
                (&a[col], &mut b[0])
            };
            for (x, p) in row.iter_mut().zip(pivot_row.iter()) {
                *x -= &k * p;
            }
        }
    }
    m.iter().map(|row| row[n].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, Factor};

    fn spec(q: Polynomial, fs: &[(Rational, u32)], sign: Sign) -> SumSpec {
        let fl = FactorList::new(fs.iter().map(|(a, m)| Factor::new(a.clone(), *m)).collect())
            .unwrap();
        SumSpec::new(q, fl, sign).unwrap()
    }

    #[test]
    fn fisher_coefficients() {
        let s = spec(Polynomial::one(), &[(int(0), 1), (rat(1, 2), 1)], Sign::Plain);
        let pf = decompose(&s).unwrap();
        assert_eq!(pf.get(&int(0), 1), Some(&int(2)));
        assert_eq!(pf.get(&rat(1, 2), 1), Some(&int(-2)));
    }

    #[test]
    fn example_three_coefficients() {
        let s = spec(Polynomial::one(), &[(int(0), 2), (rat(1, 2), 1)], Sign::Plain);
        let pf = decompose(&s).unwrap();
        assert_eq!(pf.get(&int(0), 1), Some(&int(-4)));
        assert_eq!(pf.get(&int(0), 2), Some(&int(2)));
        assert_eq!(pf.get(&rat(1, 2), 1), Some(&int(4)));
        assert!(pf.simple_pole_sum().is_zero());
    }

    #[test]
    fn example_four_coefficients() {
        let s = spec(Polynomial::one(), &[(int(1), 2), (rat(1, 2), 1)], Sign::Plain);
        let pf = decompose(&s).unwrap();
        assert_eq!(pf.get(&int(1), 1), Some(&int(-4)));
        assert_eq!(pf.get(&int(1), 2), Some(&int(-2)));
        assert_eq!(pf.get(&rat(1, 2), 1), Some(&int(4)));
    }

    #[test]
    fn recombine_examples() {
        let pf = PartialFractions::new(vec![
            PfTerm { shift: int(0), order: 1, coeff: int(2) },
            PfTerm { shift: rat(1, 2), order: 1, coeff: int(-2) },
        ]);
        let rf = pf.recombine();
        assert_eq!(rf.numerator(), &Polynomial::one());
        assert_eq!(rf.denominator(), &Polynomial::new(vec![int(0), rat(1, 2), int(1)]));

        assert!(PartialFractions::default().recombine().is_zero());

        let sq = PartialFractions::new(vec![PfTerm { shift: int(0), order: 2, coeff: int(1) }]);
        assert_eq!(sq.recombine().denominator(), &Polynomial::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn degree_bounds_per_mode() {
        let fl = FactorList::new(vec![Factor::new(int(0), 1), Factor::new(int(1), 1)]).unwrap();
        let n = Polynomial::var();
        assert!(matches!(
            SumSpec::new(n.clone(), fl.clone(), Sign::Plain),
            Err(Error::DegreeTooHigh { numerator: 1, denominator: 2, .. })
        ));
        let s = SumSpec::new(n, fl, Sign::Alternating).unwrap();
        let pf = decompose(&s).unwrap();
        // n / (n (n+1)) = 1/(n+1)
        assert_eq!(pf.get(&int(0), 1), Some(&int(0)));
        assert_eq!(pf.get(&int(1), 1), Some(&int(1)));
        assert_eq!(pf.recombine(), s.rational_function());
    }

    #[test]
    fn empty_spec() {
        let s = SumSpec::new(Polynomial::zero(), FactorList::default(), Sign::Plain).unwrap();
        assert!(decompose(&s).unwrap().terms().is_empty());
    }
}
