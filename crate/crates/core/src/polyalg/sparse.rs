use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::ring::{Coefficient, Ring};
use crate::error::{Error, Result};

/// Ordered list of variable names shared by a family of polynomials.
#[derive(Debug, PartialEq, Eq)]
pub struct Registry {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl Registry {
    pub fn new<I, S>(names: I) -> Arc<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let lookup = names.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
        Arc::new(Self { names, lookup })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }
}

/// Exponent vector. Ordered graded-lexicographically: total degree first, then
/// lexicographically with the first registry variable most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Self(vec![0; arity])
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Self(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial. No zero coefficients are stored.
#[derive(Debug, Clone)]
pub struct SparsePoly<C> {
    registry: Arc<Registry>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> SparsePoly<C> {
    pub fn zero(registry: &Arc<Registry>) -> Self {
        Self { registry: registry.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(registry: &Arc<Registry>, c: C) -> Self {
        let mut p = Self::zero(registry);
        p.add_term(Monomial::one(registry.len()), c);
        p
    }

    pub fn var(registry: &Arc<Registry>, i: usize) -> Self {
        let mut p = Self::zero(registry);
        p.add_term(Monomial::var(registry.len(), i), C::one());
        p
    }

    /// Variable by name; panics if absent.
    pub fn named(registry: &Arc<Registry>, name: &str) -> Self {
        let i = registry.index(name).unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::var(registry, i)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(registry: &Arc<Registry>, terms: I) -> Self {
        let mut p = Self::zero(registry);
        for (m, c) in terms {
            assert_eq!(m.0.len(), registry.len(), "exponent vector arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn registry(&self) -> &Arc<Registry> {
        &self.registry
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one(self.registry.len()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Leading term in the graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// Indices of variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.registry.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn same_registry(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.registry, &other.registry) || *self.registry == *other.registry
    }

    fn ensure_same(&self, other: &Self) -> Result<()> {
        if self.same_registry(other) {
            Ok(())
        } else {
            Err(Error::RegistryMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.ensure_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.ensure_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.ensure_same(other)?;
        let mut out = Self::zero(&self.registry);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.registry);
        }
        Self {
            registry: self.registry.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect(),
        }
    }

    /// Multiply by a monomial.
    pub fn shift(&self, m: &Monomial) -> Self {
        Self {
            registry: self.registry.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(&self.registry, C::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.registry);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[var] -= 1;
            let mut factor = C::zero();
            for _ in 0..e {
                factor = factor + C::one();
            }
            out.add_term(dm, c.clone() * factor);
        }
        out
    }

    /// Evaluate at a point given as one value per registry variable.
    pub fn evaluate(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.registry.len(), "point arity");
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    v = v * x.clone();
                }
            }
            total = total + v;
        }
        total
    }

    /// Replace every variable `i` by `images[i]`; all images share one target registry.
    pub fn substitute(&self, images: &[SparsePoly<C>]) -> Result<SparsePoly<C>> {
        if images.len() != self.registry.len() {
            return Err(Error::InvalidInput(format!(
                "substitution needs {} images, got {}",
                self.registry.len(),
                images.len()
            )));
        }
        let target = match images.first() {
            Some(p) => p.registry.clone(),
            None => self.registry.clone(),
        };
        if images.iter().any(|p| !Arc::ptr_eq(&p.registry, &target) && *p.registry != *target) {
            return Err(Error::RegistryMismatch);
        }
        // cache powers of each image
        let mut powers: Vec<Vec<SparsePoly<C>>> = images
            .iter()
            .map(|p| vec![SparsePoly::constant(&target, C::one()), p.clone()])
            .collect();
        let mut out = SparsePoly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = SparsePoly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Coefficients with respect to `var`: `self = sum_k out[k] * var^k`, each
    /// coefficient free of `var` and in the same registry.
    pub fn coefficients_in(&self, var: usize) -> Vec<SparsePoly<C>> {
        let d = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(&self.registry); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut rest = m.clone();
            rest.0[var] = 0;
            out[e].add_term(rest, c.clone());
        }
        out
    }

    /// Explicit coefficient conversion.
    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> SparsePoly<D> {
        let mut out = SparsePoly::zero(&self.registry);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Move into another registry through a variable map (`map[i]` is the
    /// target index of variable `i`); variables mapped to `None` must not occur.
    pub fn reembed(&self, target: &Arc<Registry>, map: &[Option<usize>]) -> Result<SparsePoly<C>> {
        let mut out = SparsePoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| {
                    Error::InvalidInput(format!("variable {} has no image", self.registry.name(i)))
                })?;
                e[j] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Coefficients of a polynomial of degree at most one: `(linear, constant)`.
    pub fn linear_parts(&self) -> Result<(Vec<C>, C)> {
        if self.total_degree().unwrap_or(0) > 1 {
            return Err(Error::InvalidInput("polynomial is not affine-linear".into()));
        }
        let mut lin = vec![C::zero(); self.registry.len()];
        let mut constant = C::zero();
        for (m, c) in &self.terms {
            match m.0.iter().position(|&e| e == 1) {
                Some(i) => lin[i] = c.clone(),
                None => constant = c.clone(),
            }
        }
        Ok((lin, constant))
    }
}

impl<C: Coefficient> PartialEq for SparsePoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.same_registry(other) && self.terms == other.terms
    }
}

impl<C: Coefficient> Add for &SparsePoly<C> {
    type Output = SparsePoly<C>;
    /// Panics on registry mismatch; see [`SparsePoly::checked_add`].
    fn add(self, rhs: Self) -> SparsePoly<C> {
        self.checked_add(rhs).expect("registry mismatch")
    }
}

impl<C: Coefficient> Sub for &SparsePoly<C> {
    type Output = SparsePoly<C>;
    fn sub(self, rhs: Self) -> SparsePoly<C> {
        self.checked_sub(rhs).expect("registry mismatch")
    }
}

impl<C: Coefficient> Mul for &SparsePoly<C> {
    type Output = SparsePoly<C>;
    fn mul(self, rhs: Self) -> SparsePoly<C> {
        self.checked_mul(rhs).expect("registry mismatch")
    }
}

impl<C: Coefficient> Neg for &SparsePoly<C> {
    type Output = SparsePoly<C>;
    fn neg(self) -> SparsePoly<C> {
        self.scale(&-C::one())
    }
}

impl<C: Coefficient> Ring for SparsePoly<C> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.registry)
    }
    fn one_like(&self) -> Self {
        Self::constant(&self.registry, C::one())
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{det, rat, BigRational};
    use num_complex::Complex64;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    type Q = SparsePoly<BigRational>;

    fn reg() -> Arc<Registry> {
        Registry::new(["x", "y", "z", "s", "t"])
    }

    #[test]
    fn difference_of_squares() {
        let r = reg();
        let s = Q::named(&r, "s");
        let t = Q::named(&r, "t");
        let lhs = &(&s + &t) * &(&s - &t);
        let rhs = &(&s * &s) - &(&t * &t);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_in_t() {
        let r = reg();
        let s = Q::named(&r, "s");
        let t = Q::named(&r, "t");
        let f = &(&t * &t) * &s;
        assert_eq!(f.derivative(4), (&t * &s).scale(&rat(2)));
    }

    #[test]
    fn substitute_t_by_one() {
        let r = reg();
        let s = Q::named(&r, "s");
        let t = Q::named(&r, "t");
        let f = &(&(&s * &s) + &(&s * &t)) + &(&t * &t);
        let one = Q::constant(&r, rat(1));
        let images = vec![Q::named(&r, "x"), Q::named(&r, "y"), Q::named(&r, "z"), s.clone(), one.clone()];
        let g = f.substitute(&images).unwrap();
        assert_eq!(g, &(&(&s * &s) + &s) + &one);
    }

    #[test]
    fn registry_mismatch_is_an_error() {
        let a = Q::var(&reg(), 0);
        let b = Q::var(&Registry::new(["u"]), 0);
        assert_eq!(a.checked_add(&b).unwrap_err(), Error::RegistryMismatch);
        assert_eq!(a.checked_mul(&b).unwrap_err(), Error::RegistryMismatch);
    }

    #[test]
    fn symbolic_determinant() {
        let r = reg();
        let s = Q::named(&r, "s");
        let t = Q::named(&r, "t");
        let d = det(&[vec![s.clone(), t.clone()], vec![t.clone(), s.clone()]]).unwrap();
        assert_eq!(d, &(&s * &s) - &(&t * &t));
    }

    #[test]
    fn coefficients_in_recombine() {
        let r = reg();
        let x = Q::named(&r, "x");
        let y = Q::named(&r, "y");
        let f = &(&(&x * &x) * &y) + &(&x - &y.scale(&rat(3)));
        let parts = f.coefficients_in(0);
        assert_eq!(parts.len(), 3);
        let mut back = Q::zero(&r);
        for (k, c) in parts.iter().enumerate() {
            back = &back + &(c * &x.pow(k as u32));
        }
        assert_eq!(back, f);
    }

    fn small_poly(r: &Arc<Registry>, seeds: &[(u8, u8, u8, i8)]) -> Q {
        Q::from_terms(
            r,
            seeds.iter().map(|&(a, b, c, k)| {
                (Monomial::from_exponents(vec![a as u32 % 3, b as u32 % 3, c as u32 % 2, 0, 0]), rat(k as i64))
            }),
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(
            a in proptest::collection::vec((0u8..3, 0u8..3, 0u8..2, -5i8..6), 0..4),
            b in proptest::collection::vec((0u8..3, 0u8..3, 0u8..2, -5i8..6), 0..4),
            c in proptest::collection::vec((0u8..3, 0u8..3, 0u8..2, -5i8..6), 0..4),
        ) {
            let r = reg();
            let (a, b, c) = (small_poly(&r, &a), small_poly(&r, &b), small_poly(&r, &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn exact_and_float_evaluation_agree(
            a in proptest::collection::vec((0u8..3, 0u8..3, 0u8..2, -5i8..6), 1..6),
            pt in proptest::collection::vec((-20i64..20, 1i64..9), 5),
        ) {
            let r = reg();
            let f = small_poly(&r, &a);
            let exact_pt: Vec<BigRational> = pt.iter().map(|&(n, d)| crate::polyalg::frac(n, d)).collect();
            let float_pt: Vec<Complex64> = exact_pt.iter().map(|v| Complex64::new(v.to_f64().unwrap(), 0.0)).collect();
            let exact = f.evaluate(&exact_pt).to_f64().unwrap();
            let float = f.map_coefficients(|c| Complex64::new(c.to_f64().unwrap(), 0.0)).evaluate(&float_pt);
            let scale = f.terms().map(|(m, c)| {
                let mut v = c.to_f64().unwrap().abs();
                for (x, &e) in float_pt.iter().zip(m.exponents()) { v *= x.re.abs().powi(e as i32); }
                v
            }).sum::<f64>().max(1e-300);
            prop_assert!((exact - float.re).abs() <= 1e-12 * scale);
            prop_assert!(float.im.abs() <= 1e-12 * scale);
        }
    }
}
