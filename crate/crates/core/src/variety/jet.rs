//! Truncated power series in local parameters and the expansion of
//! functions on `X` around a nonsingular point.

use super::{LocalChart, QuotientElement, VarietyDescriptor};
use crate::linalg::Matrix;
use crate::poly::{Monomial, Polynomial, Rational};

/// Power series in `t_1..t_s` known modulo terms of total degree `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetSeries {
    order: u32,
    series: Polynomial,
}

impl JetSeries {
    pub fn new(series: &Polynomial, order: u32) -> Self {
        assert!(order >= 1, "truncation order must be positive");
        JetSeries { order, series: truncate(series, order) }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn nparams(&self) -> usize {
        self.series.nvars()
    }

    pub fn series(&self) -> &Polynomial {
        &self.series
    }

    pub fn is_zero(&self) -> bool {
        self.series.is_zero()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.series.coefficient(m)
    }

    pub fn add(&self, other: &JetSeries) -> JetSeries {
        JetSeries::new(&(&self.series + &other.series), self.order.min(other.order))
    }

    pub fn mul(&self, other: &JetSeries) -> JetSeries {
        let order = self.order.min(other.order);
        JetSeries { order, series: mul_trunc(&self.series, &other.series, order) }
    }

    /// Lowest-degree homogeneous part, or `None` for the zero jet.
    pub fn lowest_part(&self) -> Option<Polynomial> {
        let d = self.series.terms().map(|(m, _)| m.degree()).min()?;
        Some(self.series.homogeneous_part(d))
    }
}

pub(crate) fn truncate(p: &Polynomial, order: u32) -> Polynomial {
    Polynomial::from_terms(p.nvars(), p.terms().filter(|(m, _)| m.degree() < order).map(|(m, c)| (m.clone(), c.clone())))
}

fn mul_trunc(a: &Polynomial, b: &Polynomial, order: u32) -> Polynomial {
    let mut terms = Vec::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            if ma.degree() + mb.degree() < order {
                terms.push((ma.mul(mb), ca * cb));
            }
        }
    }
    Polynomial::from_terms(a.nvars(), terms)
}

/// `f(images)` modulo degree `order`.
fn substitute_trunc(f: &Polynomial, images: &[Polynomial], order: u32) -> Polynomial {
    let s = images.first().map_or(0, Polynomial::nvars);
    let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|_| vec![Polynomial::one(s)]).collect();
    let mut acc = Polynomial::zero(s);
    for (m, c) in f.terms() {
        let mut t = Polynomial::constant(s, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            while powers[i].len() <= e as usize {
                let next = mul_trunc(powers[i].last().expect("nonempty"), &images[i], order);
                powers[i].push(next);
            }
            if e > 0 {
                t = mul_trunc(&t, &powers[i][e as usize], order);
            }
        }
        acc += &t;
    }
    acc
}

/// The coordinates `x_1(t)..x_n(t)` of `X` near a chart point, to a fixed order.
#[derive(Debug, Clone)]
pub struct LocalExpansion {
    order: u32,
    coords: Vec<Polynomial>,
}

impl LocalExpansion {
    /// Solves the chart's equations for the leading coordinates by Newton
    /// iteration with doubling precision.
    pub fn compute(x: &VarietyDescriptor, chart: &LocalChart, order: u32) -> Self {
        assert!(order >= 1, "truncation order must be positive");
        let n = x.nvars();
        let s = chart.free.len();
        let r = chart.leading.len();
        let mut coords: Vec<Polynomial> = chart.point.iter().map(|p| Polynomial::constant(s, p.clone())).collect();
        for (j, &fj) in chart.free.iter().enumerate() {
            coords[fj] = &coords[fj] + &Polynomial::var(s, j);
        }
        if r == 0 {
            return LocalExpansion { order, coords: coords.into_iter().map(|c| truncate(&c, order)).collect() };
        }
        let eqs: Vec<&Polynomial> = chart.rows.iter().map(|&i| &x.generators()[i]).collect();
        let block: Vec<Vec<Polynomial>> =
            eqs.iter().map(|f| chart.leading.iter().map(|&a| f.diff(a)).collect()).collect();
        let at_point = Matrix::from_rows(
            block.iter().map(|row| row.iter().map(|p| p.evaluate(&chart.point).expect("point")).collect()).collect(),
        );
        let inv = at_point.inverse().expect("chart minor is invertible at the point");
        let mut y: Vec<Vec<Polynomial>> =
            (0..r).map(|i| (0..r).map(|k| Polynomial::constant(s, inv.get(i, k).clone())).collect()).collect();

        let residual = |coords: &[Polynomial], prec: u32| -> Vec<Polynomial> {
            eqs.iter().map(|f| substitute_trunc(f, coords, prec)).collect()
        };
        let mut prec = 1u32;
        let mut rounds = 0;
        loop {
            if prec >= order && residual(&coords, order).iter().all(Polynomial::is_zero) {
                break;
            }
            rounds += 1;
            assert!(rounds <= 64, "Newton iteration failed to converge");
            prec = (2 * prec).min(order);
            // Y <- Y + Y (I - J(X) Y)
            let jx: Vec<Vec<Polynomial>> =
                block.iter().map(|row| row.iter().map(|p| substitute_trunc(p, &coords, prec)).collect()).collect();
            let jy = mat_mul(&jx, &y, prec);
            let mut defect = jy;
            for (i, row) in defect.iter_mut().enumerate() {
                for (k, e) in row.iter_mut().enumerate() {
                    *e = -&*e;
                    if i == k {
                        *e += &Polynomial::one(s);
                    }
                }
            }
            let corr = mat_mul(&y, &defect, prec);
            for (row, crow) in y.iter_mut().zip(&corr) {
                for (e, c) in row.iter_mut().zip(crow) {
                    *e = truncate(&(&*e + c), prec);
                }
            }
            // X <- X - Y F(X)
            let fx = residual(&coords, prec);
            for (i, &a) in chart.leading.iter().enumerate() {
                let step = y[i].iter().zip(&fx).fold(Polynomial::zero(s), |acc, (yk, fk)| &acc + &mul_trunc(yk, fk, prec));
                coords[a] = truncate(&(&coords[a] - &step), prec);
            }
        }
        debug_assert_eq!(coords.len(), n);
        LocalExpansion { order, coords }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coordinates(&self) -> &[Polynomial] {
        &self.coords
    }

    /// Jet of a polynomial function; representatives of one class agree.
    pub fn jet(&self, f: &Polynomial) -> JetSeries {
        JetSeries { order: self.order, series: substitute_trunc(f, &self.coords, self.order) }
    }
}

fn mat_mul(a: &[Vec<Polynomial>], b: &[Vec<Polynomial>], prec: u32) -> Vec<Vec<Polynomial>> {
    let s = a[0][0].nvars();
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|k| row.iter().zip(b).fold(Polynomial::zero(s), |acc, (aij, brow)| &acc + &mul_trunc(aij, &brow[k], prec)))
                .collect()
        })
        .collect()
}

impl VarietyDescriptor {
    /// Jet of `f` to the given order in the chart's parameters.
    pub fn jet_expansion(&self, chart: &LocalChart, f: &QuotientElement, order: u32) -> JetSeries {
        LocalExpansion::compute(self, chart, order).jet(f.rep())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{names, parse_polynomial};
    use crate::poly::rat;

    #[test]
    fn circle_square_root_series() {
        let x = VarietyDescriptor::parse("x1 x2", &["x1^2 + x2^2 - 1"]).unwrap();
        let c = x.local_chart(&[rat(0), rat(1)]).unwrap();
        let jet = x.jet_expansion(&c, &x.coordinate(1), 5);
        let expected = parse_polynomial("1 - 1/2*t^2 - 1/8*t^4", &names("t")).unwrap();
        assert_eq!(jet.series(), &expected);
        let t = x.jet_expansion(&c, &x.coordinate(0), 5);
        assert_eq!(t.series(), &Polynomial::var(1, 0));
        let k = x.jet_expansion(&c, &x.constant(rat(7)), 5);
        assert_eq!(k.series(), &Polynomial::constant(1, rat(7)));
    }

    #[test]
    fn generators_have_zero_jets() {
        let x = VarietyDescriptor::parse("x1 x2 x3", &["x1^2 + x2^2 + x3^2 - 1"]).unwrap();
        let c = x.local_chart(&[rat(0), rat(0), rat(1)]).unwrap();
        let e = LocalExpansion::compute(&x, &c, 8);
        assert!(e.jet(&x.generators()[0]).is_zero());
        let a = parse_polynomial("x1*x3 + x2", &names("x1 x2 x3")).unwrap();
        let b = parse_polynomial("x3^2 - x1", &names("x1 x2 x3")).unwrap();
        assert_eq!(e.jet(&(&a * &b)), e.jet(&a).mul(&e.jet(&b)));
    }

    #[test]
    fn lowest_part() {
        let j = JetSeries::new(&parse_polynomial("t^3 + 2*t^2", &names("t")).unwrap(), 3);
        assert_eq!(j.lowest_part().unwrap(), parse_polynomial("2*t^2", &names("t")).unwrap());
        assert!(JetSeries::new(&Polynomial::zero(1), 3).lowest_part().is_none());
    }
}
