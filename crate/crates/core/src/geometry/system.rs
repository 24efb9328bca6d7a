use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::relations::quantum_pluecker_relations;
use super::schedule::{t_schedule, ScheduleKind};
use super::sections::{lambda_form, section_from_plane, LinearSection, SectionSource};
use super::{parse_var_name, pluecker_registry, var_name};
use crate::error::{Error, Result};
use crate::polyalg::{parse_poly, render_poly, Monomial, Registry, SparsePoly};
use crate::qposet::{leq, ProblemShape, QuantumIndex};

/// An `m x n` plane with the point `(s, t)` at which its section is taken.
pub type PlaneCondition = (Vec<Vec<BigRational>>, (BigRational, BigRational));

/// How the hyperplane sections of a system are produced.
#[derive(Debug, Clone)]
pub enum SectionsSpec {
    /// `Lambda(1, t_i)` for each listed `t_i`.
    Osculating(Vec<BigRational>),
    /// The section of each plane `L_i` at the point `(s_i, t_i)`.
    General(Vec<PlaneCondition>),
}

impl SectionsSpec {
    /// Osculating sections at `N` parameters drawn from a schedule.
    pub fn from_schedule(shape: &ProblemShape, kind: &ScheduleKind) -> Result<Self> {
        Ok(SectionsSpec::Osculating(t_schedule(shape.dimension(), kind)?))
    }
}

/// Quadrics and linear sections on the affine patch `z_patch = 1`.
#[derive(Debug, Clone)]
pub struct PolySystem {
    pub shape: ProblemShape,
    pub registry: Arc<Registry>,
    pub quadrics: Vec<SparsePoly<BigRational>>,
    pub sections: Vec<LinearSection>,
    pub patch: QuantumIndex,
    /// When set, coordinates `z_b` with `b` not below the bound are forced to vanish.
    pub bound: Option<QuantumIndex>,
    pub reduced: Option<Reduction>,
    pub warnings: Vec<String>,
}

/// The outcome of eliminating the linear equations exactly.
#[derive(Debug, Clone)]
pub struct Reduction {
    /// Rank of the full affine system (sections, patch and forced zeros).
    pub rank: usize,
    /// Rank of the sections alone.
    pub section_rank: usize,
    /// Whether the affine system is solvable.
    pub consistent: bool,
    /// Positions of the free coordinates in the `z` registry.
    pub free: Vec<usize>,
    /// Registry over the free coordinates (same names as in the `z` registry).
    pub free_registry: Arc<Registry>,
    /// Every `z` coordinate as `sum_j c_j x_j + d` over the free coordinates.
    pub lift: Vec<(Vec<BigRational>, BigRational)>,
    /// The quadrics after substitution, each with a unit leading coefficient.
    pub quadrics: Vec<SparsePoly<BigRational>>,
    /// Powers of two with `x_j = scale_j y_j` balancing the free coordinates.
    pub scales: Vec<BigRational>,
}

impl Reduction {
    pub fn num_free(&self) -> usize {
        self.free.len()
    }

    /// The lift as polynomials over the free registry.
    pub fn lift_polys(&self) -> Vec<SparsePoly<BigRational>> {
        let k = self.free.len();
        self.lift
            .iter()
            .map(|(c, d)| {
                let terms = c
                    .iter()
                    .enumerate()
                    .map(|(j, v)| (Monomial::var(k, j), v.clone()))
                    .chain(std::iter::once((Monomial::one(k), d.clone())));
                SparsePoly::from_terms(&self.free_registry, terms)
            })
            .collect()
    }

    /// Evaluates the lift at exact free coordinates.
    pub fn lift_point(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.lift
            .iter()
            .map(|(c, d)| c.iter().zip(x).fold(d.clone(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    /// The reduced quadrics in the balanced coordinates `y`, each with coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn scaled_quadrics(&self) -> Vec<SparsePoly<BigRational>> {
        let images: Vec<SparsePoly<BigRational>> = self
            .scales
            .iter()
            .enumerate()
            .map(|(j, s)| SparsePoly::var(&self.free_registry, j).scale(s))
            .collect();
        self.quadrics
            .iter()
            .map(|q| primitive_part(&q.substitute(&images).expect("same registry")))
            .collect()
    }

    /// Product of the total degrees of the reduced quadrics.
    pub fn bezout_bound(&self) -> u64 {
        self.quadrics.iter().map(|q| q.total_degree().unwrap_or(0) as u64).product()
    }
}

/// Scales a polynomial to coprime integer coefficients with a positive leading term.
pub(crate) fn primitive_part(poly: &SparsePoly<BigRational>) -> SparsePoly<BigRational> {
    let Some((_, lead)) = poly.leading() else { return poly.clone() };
    let lcm = poly.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let content = poly.terms().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(&(c * BigRational::from_integer(lcm.clone())).to_integer()));
    let mut factor = BigRational::new(lcm, content);
    if lead.is_negative() {
        factor = -factor;
    }
    poly.scale(&factor)
}

/// The nearest power of two to `|x|`, or one when `x` vanishes.
fn nearest_power_of_two(x: &BigRational) -> BigRational {
    if x.is_zero() {
        return BigRational::one();
    }
    let x = x.abs();
    let e = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = BigRational::from_integer(2.into());
    let pow2 = |k: i64| {
        if k >= 0 {
            num_traits::pow(two.clone(), k as usize)
        } else {
            BigRational::one() / num_traits::pow(two.clone(), (-k) as usize)
        }
    };
    let mantissa = (&x / pow2(e)).to_f64().unwrap_or(1.0);
    pow2(e + mantissa.log2().round() as i64)
}

struct Echelon {
    /// `(pivot column, row)` with the pivot normalized to one and cleared elsewhere.
    rows: Vec<(usize, Vec<BigRational>, BigRational)>,
    consistent: bool,
}

/// Gauss-Jordan elimination with full pivoting: the largest pivot in absolute
/// value, ties broken by the lexicographically first `(row, column)`.
fn echelon(mut rows: Vec<(Vec<BigRational>, BigRational)>) -> Echelon {
    let mut done: Vec<(usize, Vec<BigRational>, BigRational)> = Vec::new();
    loop {
        let mut best: Option<(usize, usize)> = None;
        for (r, (row, _)) in rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some((br, bc)) if rows[br].0[bc].abs() >= v.abs() => {}
                    _ => best = Some((r, c)),
                }
            }
        }
        let Some((r, c)) = best else { break };
        let (mut prow, mut prhs) = rows.remove(r);
        let inv = BigRational::one() / &prow[c];
        prow.iter_mut().for_each(|v| *v *= &inv);
        prhs *= &inv;
        let eliminate = |row: &mut Vec<BigRational>, rhs: &mut BigRational| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for (v, p) in row.iter_mut().zip(&prow) {
                *v -= &f * p;
            }
            *rhs -= &f * &prhs;
        };
        for (row, rhs) in rows.iter_mut() {
            eliminate(row, rhs);
        }
        for (_, row, rhs) in done.iter_mut() {
            eliminate(row, rhs);
        }
        done.push((c, prow, prhs));
    }
    let consistent = rows.iter().all(|(_, rhs)| rhs.is_zero());
    Echelon { rows: done, consistent }
}

/// Exact solve of a small nonsingular system.
fn solve_dense(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &a[c][c];
            let pivot_row = a[c].clone();
            for (v, w) in a[r].iter_mut().zip(&pivot_row) {
                *v -= &f * w;
            }
            let bc = b[c].clone();
            b[r] -= &f * bc;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

impl PolySystem {
    /// Assembles a system from its parts and performs the linear reduction.
    pub fn from_parts(
        shape: ProblemShape,
        quadrics: Vec<SparsePoly<BigRational>>,
        sections: Vec<LinearSection>,
        patch: QuantumIndex,
        bound: Option<QuantumIndex>,
    ) -> Result<Self> {
        shape.validate(&patch)?;
        let registry = pluecker_registry(&shape, &[]);
        for poly in quadrics.iter().chain(sections.iter().map(|s| &s.form)) {
            if poly.registry().names() != registry.names() {
                return Err(Error::RegistryMismatch);
            }
        }
        if let Some(b) = &bound {
            shape.validate(b)?;
            if !leq(&shape, &patch, b)? {
                return Err(Error::InvalidInput(format!("patch {patch} is not below the bound {b}")));
            }
        }
        let mut system = PolySystem {
            shape,
            registry,
            quadrics,
            sections,
            patch,
            bound,
            reduced: None,
            warnings: Vec::new(),
        };
        system.reduce()?;
        Ok(system)
    }

    /// The same sections on `Z_bound`: coordinates not below `bound` vanish and
    /// the patch moves to `bound`.
    pub fn restrict_to(&self, bound: &QuantumIndex) -> Result<Self> {
        let quadrics = self.quadrics.clone();
        PolySystem::from_parts(self.shape, quadrics, self.sections.clone(), bound.clone(), Some(bound.clone()))
    }

    /// Positions of the coordinates forced to zero by the bound.
    pub fn forced_zero(&self) -> Vec<usize> {
        match &self.bound {
            None => Vec::new(),
            Some(b) => self
                .shape
                .indices()
                .iter()
                .enumerate()
                .filter(|(_, x)| !leq(&self.shape, x, b).unwrap_or(false))
                .map(|(i, _)| i)
                .collect(),
        }
    }

    fn reduce(&mut self) -> Result<()> {
        let k = self.registry.len();
        let section_rows: Vec<(Vec<BigRational>, BigRational)> = self
            .sections
            .iter()
            .map(|s| {
                let (lin, c) = s.form.linear_parts()?;
                if !c.is_zero() {
                    return Err(Error::InvalidInput("sections must be homogeneous linear forms".into()));
                }
                Ok((lin, c))
            })
            .collect::<Result<_>>()?;
        let section_rank = echelon(section_rows.clone()).rows.len();
        if section_rank < self.sections.len() {
            self.warnings.push(format!(
                "degenerate configuration: {} sections have rank {section_rank}",
                self.sections.len()
            ));
        }
        let unit = |i: usize, rhs: BigRational| {
            let mut row = vec![BigRational::zero(); k];
            row[i] = BigRational::one();
            (row, rhs)
        };
        let mut rows = section_rows;
        rows.push(unit(self.shape.position(&self.patch)?, BigRational::one()));
        for i in self.forced_zero() {
            rows.push(unit(i, BigRational::zero()));
        }
        let ech = echelon(rows);
        if !ech.consistent {
            self.warnings.push("inconsistent linear system: no point on the patch".into());
        }
        let pivots: Vec<usize> = ech.rows.iter().map(|(c, _, _)| *c).collect();
        let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
        let free_registry = Registry::new(free.iter().map(|&i| self.registry.name(i).to_string()));
        let mut lift: Vec<(Vec<BigRational>, BigRational)> =
            (0..k).map(|_| (vec![BigRational::zero(); free.len()], BigRational::zero())).collect();
        for (j, &f) in free.iter().enumerate() {
            lift[f].0[j] = BigRational::one();
        }
        for (c, row, rhs) in &ech.rows {
            let coeffs = free.iter().map(|&f| -row[f].clone()).collect();
            lift[*c] = (coeffs, rhs.clone());
        }

        // Minimum-norm point of the affine space: R^T (R R^T)^{-1} b.
        let gram: Vec<Vec<BigRational>> = ech
            .rows
            .iter()
            .map(|(_, a, _)| {
                ech.rows
                    .iter()
                    .map(|(_, b, _)| a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y))
                    .collect()
            })
            .collect();
        let rhs: Vec<BigRational> = ech.rows.iter().map(|(_, _, r)| r.clone()).collect();
        let scales = match solve_dense(gram, rhs) {
            Some(w) if ech.consistent => free
                .iter()
                .map(|&f| {
                    let v = ech.rows.iter().zip(&w).fold(BigRational::zero(), |acc, ((_, row, _), wi)| acc + &row[f] * wi);
                    nearest_power_of_two(&v)
                })
                .collect(),
            _ => vec![BigRational::one(); free.len()],
        };

        let mut reduction = Reduction {
            rank: ech.rows.len(),
            section_rank,
            consistent: ech.consistent,
            free,
            free_registry,
            lift,
            quadrics: Vec::new(),
            scales,
        };
        let images = reduction.lift_polys();
        let mut reduced: Vec<SparsePoly<BigRational>> = Vec::new();
        for q in &self.quadrics {
            let r = q.substitute(&images)?;
            let Some((_, lead)) = r.leading() else { continue };
            if r.is_constant() {
                self.warnings.push("a quadric reduces to a nonzero constant".into());
                reduction.consistent = false;
            }
            let r = r.scale(&(BigRational::one() / lead));
            if !reduced.contains(&r) {
                reduced.push(r);
            }
        }
        reduction.quadrics = reduced;
        self.reduced = Some(reduction);
        Ok(())
    }

    pub fn reduction(&self) -> Result<&Reduction> {
        self.reduced.as_ref().ok_or_else(|| Error::Internal("system has not been reduced".into()))
    }

    /// Line-based text form; [`PolySystem::parse`] inverts it exactly.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "shape {} {} {}", self.shape.m(), self.shape.p(), self.shape.q());
        let _ = writeln!(out, "patch {}", var_name(&self.shape, "z", &self.patch));
        if let Some(b) = &self.bound {
            let _ = writeln!(out, "bound {}", var_name(&self.shape, "z", b));
        }
        for q in &self.quadrics {
            let _ = writeln!(out, "quadric: {}", render_poly(q));
        }
        for s in &self.sections {
            let _ = writeln!(out, "section: {}", render_poly(&s.form));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut shape = None;
        let mut patch = None;
        let mut bound = None;
        let mut quadrics = Vec::new();
        let mut sections = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |what: &str| Error::Parse(format!("line {}: {what}", lineno + 1));
            if let Some(rest) = line.strip_prefix("shape ") {
                let v: Vec<usize> = rest
                    .split_whitespace()
                    .map(|x| x.parse().map_err(|_| err("bad shape")))
                    .collect::<Result<_>>()?;
                if v.len() != 3 {
                    return Err(err("shape needs m p q"));
                }
                shape = Some(ProblemShape::new(v[0], v[1], v[2])?);
                continue;
            }
            let sh = shape.ok_or_else(|| err("the shape line must come first"))?;
            let index = |name: &str| parse_var_name(&sh, name.trim()).ok_or_else(|| err(&format!("unknown coordinate {name}")));
            if let Some(rest) = line.strip_prefix("patch ") {
                patch = Some(index(rest)?);
            } else if let Some(rest) = line.strip_prefix("bound ") {
                bound = Some(index(rest)?);
            } else if let Some(rest) = line.strip_prefix("quadric:") {
                quadrics.push(parse_poly(rest.trim(), &pluecker_registry(&sh, &[]))?);
            } else if let Some(rest) = line.strip_prefix("section:") {
                let form = parse_poly(rest.trim(), &pluecker_registry(&sh, &[]))?;
                sections.push(LinearSection { source: SectionSource::Text, form });
            } else {
                return Err(err("unrecognized line"));
            }
        }
        let shape = shape.ok_or_else(|| Error::Parse("missing shape line".into()))?;
        let patch = patch.unwrap_or_else(|| shape.top());
        // Registries are rebuilt per line; unify them.
        let registry = pluecker_registry(&shape, &[]);
        let same = |p: SparsePoly<BigRational>| SparsePoly::from_terms(&registry, p.terms().map(|(m, c)| (m.clone(), c.clone())).collect::<Vec<_>>());
        let quadrics = quadrics.into_iter().map(same).collect();
        let sections = sections.into_iter().map(|s| LinearSection { source: s.source, form: same(s.form) }).collect();
        PolySystem::from_parts(shape, quadrics, sections, patch, bound)
    }
}

/// Quadrics of `shape` cut by the given sections on the patch (default: the top index).
pub fn build_system(shape: &ProblemShape, spec: &SectionsSpec, patch: Option<QuantumIndex>) -> Result<PolySystem> {
    let sections = match spec {
        SectionsSpec::Osculating(ts) => {
            let ts = t_schedule(ts.len(), &ScheduleKind::Explicit(ts.clone()))?;
            ts.iter()
                .map(|t| lambda_form(shape, &BigRational::one(), t))
                .collect::<Result<Vec<_>>>()?
        }
        SectionsSpec::General(planes) => {
            for (i, p) in planes.iter().enumerate() {
                if planes[..i].iter().any(|o| o == p) {
                    return Err(Error::InvalidInput(format!("section {} repeats an earlier one", i + 1)));
                }
            }
            planes
                .iter()
                .map(|(l, (s, t))| section_from_plane(shape, l, s, t))
                .collect::<Result<Vec<_>>>()?
        }
    };
    let mut system = PolySystem::from_parts(
        *shape,
        quantum_pluecker_relations(shape),
        sections,
        patch.unwrap_or_else(|| shape.top()),
        None,
    )?;
    if system.sections.len() != shape.dimension() {
        system.warnings.push(format!(
            "{} sections supplied; the enumerative problem has {}",
            system.sections.len(),
            shape.dimension()
        ));
    }
    Ok(system)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{frac, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn flagship(k: u32) -> PolySystem {
        let shape = ProblemShape::new(2, 2, 1).unwrap();
        build_system(&shape, &SectionsSpec::from_schedule(&shape, &ScheduleKind::Power(k)).unwrap(), None).unwrap()
    }

    #[test]
    fn flagship_reduces_to_three_quadrics_in_three_unknowns() {
        for k in [1, 6] {
            let sys = flagship(k);
            let red = sys.reduction().unwrap();
            assert_eq!(red.section_rank, 8);
            assert_eq!(red.num_free(), 3);
            assert_eq!(red.quadrics.len(), 3);
            assert_eq!(red.bezout_bound(), 8);
            assert!(red.consistent);
            assert!(sys.warnings.is_empty(), "{:?}", sys.warnings);
        }
    }

    #[test]
    fn lines_meeting_four_lines() {
        let shape = ProblemShape::new(2, 2, 0).unwrap();
        let spec = SectionsSpec::Osculating(vec![rat(1), rat(2), rat(3), rat(4)]);
        let sys = build_system(&shape, &spec, None).unwrap();
        let red = sys.reduction().unwrap();
        assert_eq!(red.num_free(), 1);
        assert_eq!(red.quadrics.len(), 1);
        assert_eq!(red.quadrics[0].total_degree(), Some(2));
    }

    #[test]
    fn repeated_parameters_rejected() {
        let shape = ProblemShape::new(2, 2, 0).unwrap();
        let spec = SectionsSpec::Osculating(vec![rat(1), rat(2), rat(2), rat(4)]);
        assert!(matches!(build_system(&shape, &spec, None), Err(Error::InvalidSchedule(_))));
    }

    #[test]
    fn lift_satisfies_every_section() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let sys = flagship(6);
        let red = sys.reduction().unwrap();
        for _ in 0..10 {
            let x: Vec<BigRational> = (0..red.num_free()).map(|_| frac(rng.gen_range(-50..50), rng.gen_range(1..9))).collect();
            let z = red.lift_point(&x);
            for s in &sys.sections {
                assert!(s.form.evaluate(&z).is_zero());
            }
            assert_eq!(z[sys.shape.position(&sys.patch).unwrap()], rat(1));
            let lifted_quadrics: Vec<BigRational> = sys.quadrics.iter().map(|q| q.evaluate(&z)).collect();
            for (q, v) in red.quadrics.iter().zip(&lifted_quadrics) {
                let w = q.evaluate(&x);
                assert_eq!(w.is_zero(), v.is_zero());
            }
        }
    }

    #[test]
    fn scales_are_powers_of_two() {
        let sys = flagship(6);
        let red = sys.reduction().unwrap();
        for s in &red.scales {
            let bits = if s >= &BigRational::one() { s.numer().clone() } else { s.denom().clone() };
            assert_eq!(bits.magnitude().iter_u64_digits().map(u64::count_ones).sum::<u32>(), 1);
        }
        assert!(red.scales.iter().any(|s| s < &frac(1, 1 << 20)));
        for q in red.scaled_quadrics() {
            assert!(q.terms().all(|(_, c)| c.is_integer()));
        }
    }

    #[test]
    fn text_round_trip() {
        let sys = flagship(6);
        let text = sys.render();
        let back = PolySystem::parse(&text).unwrap();
        assert_eq!(back.render(), text);
        assert_eq!(back.quadrics, sys.quadrics);
        assert_eq!(back.reduction().unwrap().quadrics, sys.reduction().unwrap().quadrics);
        assert!(PolySystem::parse("patch z34_1\n").is_err());
        assert!(PolySystem::parse("shape 2 2 1\nquadric: z99_0\n").is_err());
    }

    #[test]
    fn restriction_to_a_schubert_variety() {
        // Z_{34^(0)} is the Grassmannian G(2,4) of dimension 4.
        let shape = ProblemShape::new(2, 2, 1).unwrap();
        let bound = QuantumIndex::new(vec![3, 4], 0);
        let ts = [rat(1), rat(2), rat(3), rat(5)];
        let sections = ts.iter().map(|t| lambda_form(&shape, &rat(1), t).unwrap()).collect();
        let sys = PolySystem::from_parts(shape, quantum_pluecker_relations(&shape), sections, bound.clone(), Some(bound)).unwrap();
        let red = sys.reduction().unwrap();
        assert_eq!(red.num_free(), 1);
        assert_eq!(red.bezout_bound(), 2);
    }
}
