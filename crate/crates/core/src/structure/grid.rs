use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{DivisorClass, PnqrModulus, Shape};
use crate::error::{Error, Result};
use crate::groupring::{char_value, is_char_zero, prime_power_vanishing, CyclotomicInteger, GroupRingElement};

/// `A = sum_{j,k} A_{jk} b^j c^k` with each `A_{jk}` in `Z[Z_{p^n}]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridDecomposition {
    modulus: PnqrModulus,
    /// Row-major: cell `(j, k)` at `j * r + k`.
    cells: Vec<GroupRingElement>,
}

pub fn decompose(x: &GroupRingElement, m: &PnqrModulus) -> Result<GridDecomposition> {
    if x.modulus() != m.modulus() {
        return Err(Error::ModulusMismatch {
            left: x.modulus().n(),
            right: m.modulus().n(),
        });
    }
    let mut cells = vec![GroupRingElement::zero(m.local().clone()); (m.q * m.r) as usize];
    for (g, c) in x.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (xa, j, k) = m.coords(g as u32);
        cells[(j * m.r + k) as usize].add_term(xa as u64, c.clone());
    }
    Ok(GridDecomposition {
        modulus: m.clone(),
        cells,
    })
}

impl GridDecomposition {
    pub fn modulus(&self) -> &PnqrModulus {
        &self.modulus
    }

    pub fn cell(&self, j: u32, k: u32) -> &GroupRingElement {
        &self.cells[(j * self.modulus.r + k) as usize]
    }

    pub fn recompose(&self) -> GroupRingElement {
        let m = &self.modulus;
        let mut out = GroupRingElement::zero(m.modulus().clone());
        for j in 0..m.q {
            for k in 0..m.r {
                for (x, c) in self.cell(j, k).coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        out.add_term(m.element(x as u32, j, k) as u64, c.clone());
                    }
                }
            }
        }
        out
    }

    /// One line per nonempty cell: `(j,k): <residues of Z_{p^n}>`.
    pub fn dump(&self) -> String {
        let m = &self.modulus;
        let mut s = String::new();
        for j in 0..m.q {
            for k in 0..m.r {
                let cell = self.cell(j, k);
                if cell.is_zero() {
                    continue;
                }
                let body = cell.to_string();
                let residues = body.split_once("S=").map_or("", |(_, r)| r);
                writeln!(s, "({j},{k}): {residues}").expect("write to string");
            }
        }
        s
    }

    /// Coefficients of `Y` folded modulo `p^{n-i}`, i.e. the data of
    /// `chi_{p^i}` on `Z_{p^n}`.
    fn folded(&self, y: &GroupRingElement, i: u32) -> Vec<BigInt> {
        let len = self.modulus.p.pow(self.modulus.n - i) as usize;
        let mut out = vec![BigInt::zero(); len];
        for (x, c) in y.coeffs().iter().enumerate() {
            out[x % len] += c;
        }
        out
    }

    fn local_char(&self, y: &GroupRingElement, i: u32) -> CyclotomicInteger {
        char_value(y, self.modulus.p.pow(i))
    }
}

fn sum_into(acc: &mut [BigInt], v: &[BigInt], sign: i32) {
    for (a, b) in acc.iter_mut().zip(v) {
        if sign > 0 {
            *a += b;
        } else {
            *a -= b;
        }
    }
}

/// Decides whether the class `c` lies in `Z_A` from the grid alone. For
/// `i < n` the class is in the zero set iff `chi_{p^i}` on `Z_{p^n}` kills
///
/// * `p^i`:    `A_{jk} - A_{j0} - A_{0k} + A_{00}` for all `j, k`;
/// * `p^i q`:  `sum_j (A_{jk} - A_{j0})` for all `k`;
/// * `p^i r`:  `sum_k (A_{jk} - A_{0k})` for all `j`;
/// * `p^i qr`: `sum_j sum_k A_{jk}`.
///
/// Exponent `n` is answered by evaluating the character of the recomposed
/// element directly.
pub fn class_zero_predicate(g: &GridDecomposition, c: DivisorClass) -> Result<bool> {
    let m = &g.modulus;
    c.check(m)?;
    let i = c.exponent;
    if i == m.n {
        return Ok(is_char_zero(&g.recompose(), c.divisor(m)));
    }
    let folded: Vec<Vec<BigInt>> = g.cells.iter().map(|x| g.folded(x, i)).collect();
    let cell = |j: u32, k: u32| &folded[(j * m.r + k) as usize];
    let len = folded[0].len();
    let vanishes = |v: &[BigInt]| prime_power_vanishing(v, m.p, m.n - i).expect("folded length");
    let zero = || vec![BigInt::zero(); len];
    Ok(match c.shape {
        Shape::P => (0..m.q).all(|j| {
            (0..m.r).all(|k| {
                let mut v = cell(j, k).clone();
                sum_into(&mut v, cell(j, 0), -1);
                sum_into(&mut v, cell(0, k), -1);
                sum_into(&mut v, cell(0, 0), 1);
                vanishes(&v)
            })
        }),
        Shape::PQ => (0..m.r).all(|k| {
            let mut v = zero();
            for j in 0..m.q {
                sum_into(&mut v, cell(j, k), 1);
                sum_into(&mut v, cell(j, 0), -1);
            }
            vanishes(&v)
        }),
        Shape::PR => (0..m.q).all(|j| {
            let mut v = zero();
            for k in 0..m.r {
                sum_into(&mut v, cell(j, k), 1);
                sum_into(&mut v, cell(0, k), -1);
            }
            vanishes(&v)
        }),
        Shape::PQR => {
            let mut v = zero();
            for x in &folded {
                sum_into(&mut v, x, 1);
            }
            vanishes(&v)
        }
    })
}

/// Consequences for the local characters `chi(Y) = chi_{p^i}(Y)` on
/// `Z_{p^n}`, each valid when the listed classes at exponent `i` are in `Z_A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Conclusion {
    /// `{p^i, p^i q}`: `chi(A_{jk} - A_{j0}) = 0`.
    RowDifferences,
    /// `{p^i, p^i r}`: `chi(A_{jk} - A_{0k}) = 0`.
    ColumnDifferences,
    /// `{p^i q, p^i r}`: `r chi(sum_j A_{jk}) = q chi(sum_k A_{jk})` for all `j, k`.
    /// Both sides are then constant in their free index.
    BalancedSums,
    /// `{p^i q, p^i qr}`: `chi(sum_j A_{jk}) = 0` for all `k`.
    ColumnSums,
    /// `{p^i r, p^i qr}`: `chi(sum_k A_{jk}) = 0` for all `j`.
    RowSums,
    /// `{p^i, p^i q, p^i r}`: `chi(A_{jk} - A_{00}) = 0`.
    CellDifferences,
    /// All four classes: `chi(A_{jk}) = 0`.
    Cells,
}

impl Conclusion {
    pub const ALL: [Conclusion; 7] = [
        Conclusion::RowDifferences,
        Conclusion::ColumnDifferences,
        Conclusion::BalancedSums,
        Conclusion::ColumnSums,
        Conclusion::RowSums,
        Conclusion::CellDifferences,
        Conclusion::Cells,
    ];

    pub fn hypotheses(&self) -> &'static [Shape] {
        match self {
            Conclusion::RowDifferences => &[Shape::P, Shape::PQ],
            Conclusion::ColumnDifferences => &[Shape::P, Shape::PR],
            Conclusion::BalancedSums => &[Shape::PQ, Shape::PR],
            Conclusion::ColumnSums => &[Shape::PQ, Shape::PQR],
            Conclusion::RowSums => &[Shape::PR, Shape::PQR],
            Conclusion::CellDifferences => &[Shape::P, Shape::PQ, Shape::PR],
            Conclusion::Cells => &[Shape::P, Shape::PQ, Shape::PR, Shape::PQR],
        }
    }

    /// Position in the conventional numbering, 1 to 7.
    pub fn number(&self) -> usize {
        Conclusion::ALL.iter().position(|c| c == self).expect("listed") + 1
    }
}

/// A grid position; `None` marks an index that a sum ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub j: Option<u32>,
    pub k: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConclusionCheck {
    pub conclusion: Conclusion,
    pub holds: bool,
    pub violation: Option<Cell>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicationReport {
    pub exponent: u32,
    pub checks: Vec<ConclusionCheck>,
}

impl ImplicationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn first_failure(cells: impl IntoIterator<Item = (Cell, bool)>) -> Option<Cell> {
    cells.into_iter().find(|(_, ok)| !ok).map(|(c, _)| c)
}

/// Verifies the hypothesis classes at exponent `i < n`, then checks every
/// conclusion whose hypotheses are all among them, as exact identities in
/// `Z[zeta_{p^{n-i}}]`.
pub fn grid_implications(
    g: &GridDecomposition,
    i: u32,
    hypotheses: &[Shape],
) -> Result<ImplicationReport> {
    let m = &g.modulus;
    if i >= m.n {
        return Err(Error::ExponentOutOfRange { exponent: i, n: m.n });
    }
    for &h in hypotheses {
        let class = DivisorClass::new(h, i);
        if !class_zero_predicate(g, class)? {
            return Err(Error::HypothesisNotSatisfied(format!(
                "class {} (divisor {}) is not in the zero set",
                h,
                class.divisor(m)
            )));
        }
    }
    let (q, r) = (m.q, m.r);
    let chi: Vec<CyclotomicInteger> = g.cells.iter().map(|x| g.local_char(x, i)).collect();
    let at = |j: u32, k: u32| &chi[(j * r + k) as usize];
    let order = chi[0].order();
    let col_sum: Vec<CyclotomicInteger> = (0..r)
        .map(|k| (0..q).fold(CyclotomicInteger::zero(order), |acc, j| &acc + at(j, k)))
        .collect();
    let row_sum: Vec<CyclotomicInteger> = (0..q)
        .map(|j| (0..r).fold(CyclotomicInteger::zero(order), |acc, k| &acc + at(j, k)))
        .collect();
    let grid = || (0..q).flat_map(move |j| (0..r).map(move |k| (j, k)));
    let both = |j, k| Cell {
        j: Some(j),
        k: Some(k),
    };

    let mut checks = Vec::new();
    for conclusion in Conclusion::ALL {
        if !conclusion.hypotheses().iter().all(|h| hypotheses.contains(h)) {
            continue;
        }
        let violation = match conclusion {
            Conclusion::RowDifferences => {
                first_failure(grid().map(|(j, k)| (both(j, k), (at(j, k) - at(j, 0)).is_zero())))
            }
            Conclusion::ColumnDifferences => {
                first_failure(grid().map(|(j, k)| (both(j, k), (at(j, k) - at(0, k)).is_zero())))
            }
            Conclusion::BalancedSums => {
                let (qb, rb) = (BigInt::from(q), BigInt::from(r));
                first_failure(grid().map(|(j, k)| {
                    let lhs = col_sum[k as usize].scale(&rb);
                    let rhs = row_sum[j as usize].scale(&qb);
                    (both(j, k), (&lhs - &rhs).is_zero())
                }))
            }
            Conclusion::ColumnSums => first_failure((0..r).map(|k| {
                (
                    Cell {
                        j: None,
                        k: Some(k),
                    },
                    col_sum[k as usize].is_zero(),
                )
            })),
            Conclusion::RowSums => first_failure((0..q).map(|j| {
                (
                    Cell {
                        j: Some(j),
                        k: None,
                    },
                    row_sum[j as usize].is_zero(),
                )
            })),
            Conclusion::CellDifferences => {
                first_failure(grid().map(|(j, k)| (both(j, k), (at(j, k) - at(0, 0)).is_zero())))
            }
            Conclusion::Cells => first_failure(grid().map(|(j, k)| (both(j, k), at(j, k).is_zero()))),
        };
        checks.push(ConclusionCheck {
            conclusion,
            holds: violation.is_none(),
            violation,
        });
    }
    Ok(ImplicationReport { exponent: i, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::zero_set;
    use crate::sets::ResidueSet;

    fn elem(n: u32, xs: &[u32]) -> GroupRingElement {
        ResidueSet::of(n, xs).unwrap().to_element()
    }

    #[test]
    fn decompose_examples() {
        let m = PnqrModulus::from_n(30, 2).unwrap();
        let g = decompose(&elem(30, &[0, 15]), &m).unwrap();
        assert_eq!(g.cell(0, 0), &elem(2, &[0, 1]));
        for j in 0..3 {
            for k in 0..5 {
                if (j, k) != (0, 0) {
                    assert!(g.cell(j, k).is_zero());
                }
            }
        }
        assert_eq!(g.dump(), "(0,0): 0,1\n");
        let empty = decompose(&elem(30, &[]), &m).unwrap();
        assert_eq!(empty.dump(), "");

        let m60 = PnqrModulus::from_n(60, 2).unwrap();
        let sub: Vec<u32> = (0..60).step_by(4).collect();
        let g = decompose(&elem(60, &sub), &m60).unwrap();
        for j in 0..3 {
            for k in 0..5 {
                assert_eq!(g.cell(j, k).augmentation(), BigInt::from(1));
            }
        }
        assert_eq!(g.recompose(), elem(60, &sub));
        assert!(decompose(&elem(12, &[0]), &m).is_err());
    }

    #[test]
    fn predicates_match_membership() {
        let m = PnqrModulus::from_n(30, 2).unwrap();
        for xs in [&[0u32, 15][..], &[0, 6], &[0, 1, 2, 3, 4, 5], &[0, 10, 20]] {
            let x = elem(30, xs);
            let z = zero_set(&x).unwrap();
            let g = decompose(&x, &m).unwrap();
            for c in DivisorClass::all(&m) {
                assert_eq!(
                    class_zero_predicate(&g, c).unwrap(),
                    z.contains(c.divisor(&m)),
                    "{xs:?} {c:?}"
                );
            }
        }
        let g = decompose(&elem(30, &[0, 15]), &m).unwrap();
        assert!(class_zero_predicate(&g, DivisorClass::new(Shape::PQR, 0)).unwrap());
        assert!(class_zero_predicate(&g, DivisorClass::new(Shape::PR, 0)).unwrap());
        assert_eq!(
            class_zero_predicate(&g, DivisorClass::new(Shape::PQR, 1)),
            Err(Error::ExponentOutOfRange { exponent: 1, n: 1 })
        );
    }

    #[test]
    fn implication_examples() {
        let m = PnqrModulus::from_n(30, 2).unwrap();
        let g = decompose(&elem(30, &[0, 15]), &m).unwrap();
        let rep = grid_implications(&g, 0, &[Shape::P, Shape::PQ]).unwrap();
        assert_eq!(rep.checks.len(), 1);
        assert_eq!(rep.checks[0].conclusion, Conclusion::RowDifferences);
        assert!(rep.all_hold());
        let rep = grid_implications(&g, 0, &Shape::ALL).unwrap();
        assert_eq!(rep.checks.len(), 7);
        assert!(rep.all_hold());
        let rep = grid_implications(&g, 0, &[]).unwrap();
        assert!(rep.checks.is_empty() && rep.all_hold());

        let g = decompose(&elem(30, &[0, 6]), &m).unwrap();
        assert!(matches!(
            grid_implications(&g, 0, &[Shape::P]),
            Err(Error::HypothesisNotSatisfied(_))
        ));
    }
}
