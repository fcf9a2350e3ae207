//! EPW sextics of ρ-Lagrangians, the planes Σ and Σ′, and the pointwise
//! correspondence between EPW points and lines on the cubic.
//!
//! Points of `P(V₆*)` are covectors `λ = (e, f)` in the dual basis of
//! `e1, e2, e3, f1, f2, f3`.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::exterior::{contraction_matrix, grade_dim, ExteriorElement};
use crate::algebra::matrix::{FMatrix, Matrix};
use crate::algebra::poly::{var_names, MultiPoly};
use crate::algebra::{Field, FieldElement};
use crate::error::{Error, Result};
use crate::gale::NonSyzygeticEquation;
use crate::lagrangian::RhoLagrangianData;

/// A point of `P(V₆*)`, normalized so its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct EPWPoint {
    lambda: Vec<FieldElement>,
}

impl EPWPoint {
    pub fn new(lambda: Vec<FieldElement>) -> Result<Self> {
        if lambda.len() != 6 {
            return Err(Error::InvalidInput(format!("a covector has 6 coordinates, got {}", lambda.len())));
        }
        let Some(pivot) = lambda.iter().find(|c| !c.is_zero()) else {
            return Err(Error::InvalidInput("zero covector".into()));
        };
        let inv = pivot.inv().expect("nonzero");
        Ok(EPWPoint { lambda: lambda.iter().map(|c| c * &inv).collect() })
    }

    pub fn from_parts(e: &[FieldElement], f: &[FieldElement]) -> Result<Self> {
        let mut v = e.to_vec();
        v.extend_from_slice(f);
        Self::new(v)
    }

    pub fn lambda(&self) -> &[FieldElement] {
        &self.lambda
    }

    pub fn e(&self) -> &[FieldElement] {
        &self.lambda[..3]
    }

    pub fn f(&self) -> &[FieldElement] {
        &self.lambda[3..]
    }

    pub fn field(&self) -> Field {
        self.lambda[0].field()
    }

    pub fn random<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Self {
        loop {
            let v: Vec<FieldElement> = (0..6).map(|_| field.random(rng)).collect();
            if let Ok(p) = Self::new(v) {
                return p;
            }
        }
    }

    /// A random point of `Σ = P(E^⊥)` (`e = 0`) or, with `side = 1`, of `Σ′ = P(F^⊥)`.
    pub fn random_on_sigma<R: Rng + ?Sized>(field: Field, side: usize, rng: &mut R) -> Self {
        loop {
            let mut v = vec![field.zero(); 6];
            for c in v.iter_mut().skip(3 * (1 - side)).take(3) {
                *c = field.random(rng);
            }
            if let Ok(p) = Self::new(v) {
                return p;
            }
        }
    }
}

/// A linear subspace of projective space given by row-reduced linear forms.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveSubspace {
    forms: FMatrix,
    ambient: usize,
}

impl ProjectiveSubspace {
    /// Subspace cut out by the rows of `forms` (dependent rows are dropped).
    pub fn from_forms(forms: &FMatrix) -> Self {
        let r = forms.rref();
        let k = r.pivots.len();
        let forms = r.matrix.select_rows(&(0..k).collect::<Vec<_>>());
        ProjectiveSubspace { forms, ambient: r.matrix.cols() }
    }

    /// Span of the given column vectors.
    pub fn span(points: &FMatrix) -> Self {
        Self::from_forms(&points.transpose().kernel_basis().transpose())
    }

    pub fn forms(&self) -> &FMatrix {
        &self.forms
    }

    pub fn codim(&self) -> usize {
        self.forms.rows()
    }

    /// Projective dimension; -1 for the empty subspace.
    pub fn dim(&self) -> isize {
        self.ambient as isize - self.forms.rows() as isize - 1
    }

    /// Basis of the underlying vector space, as columns.
    pub fn points(&self) -> FMatrix {
        if self.forms.rows() == 0 {
            return FMatrix::eye(self.forms.field(), self.ambient);
        }
        self.forms.kernel_basis()
    }

    pub fn contains_point(&self, x: &[FieldElement]) -> bool {
        self.forms.rows() == 0 || self.forms.mul_vec(x).iter().all(|c| c.is_zero())
    }

    pub fn contains(&self, o: &ProjectiveSubspace) -> bool {
        self.forms.rows() == 0 || self.forms.mul(&o.points()).is_zero_matrix()
    }
}

/// `Σ = P(E^⊥)` (side 0) or `Σ′ = P(F^⊥)` (side 1) inside `P(V₆*)`.
pub fn sigma_plane(field: Field, side: usize) -> ProjectiveSubspace {
    let rows: Vec<Vec<FieldElement>> = (0..3)
        .map(|k| (0..6).map(|j| if j == 3 * side + k { field.one() } else { field.zero() }).collect())
        .collect();
    ProjectiveSubspace::from_forms(&Matrix::from_rows(rows, field.zero()))
}

/// Whether `Σ` and `Σ′` have a common point.
pub fn sigma_planes_meet(field: Field) -> bool {
    sigma_plane(field, 0).forms().vstack(sigma_plane(field, 1).forms()).rank() < 6
}

/// `(dim A ∩ Λ³V₅ ≥ 1, dim A ∩ Λ³V₅)` for `V₅ = ker λ`.
pub fn epw_contains(a: &RhoLagrangianData, p: &EPWPoint) -> (bool, usize) {
    let n = contraction_matrix(a.field(), p.lambda(), 3).mul(a.basis()).nullity();
    (n >= 1, n)
}

/// Matrix of the pairing `(a_i, c_j) ↦ a_i ∧ ι_λ(c_j)` between the basis of
/// `A` and the standard basis of `Λ⁴V₆`, as 10×15.
pub fn pairing_matrix(a: &RhoLagrangianData, lambda: &[FieldElement]) -> FMatrix {
    let field = a.field();
    let cols: Vec<ExteriorElement> = (0..grade_dim(4))
        .map(|j| ExteriorElement::basis(field, 4, j).contract(lambda).expect("grade 4"))
        .collect();
    let rows: Vec<ExteriorElement> = a
        .basis()
        .col_vecs()
        .into_iter()
        .map(|c| ExteriorElement::from_coeffs(field, 3, c).expect("grade 3"))
        .collect();
    Matrix::from_fn(rows.len(), cols.len(), field.zero(), |i, j| {
        rows[i].wedge(&cols[j]).expect("grade 6").coeffs()[0].clone()
    })
}

/// Column subsets of size 10 out of 15, in schedule order: cyclic windows
/// first, then lexicographic subsets.
fn minor_schedule(count: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in 0..15 {
        let mut s: Vec<usize> = (0..10).map(|k| (start + k) % 15).collect();
        s.sort_unstable();
        out.push(s);
    }
    let all = crate::algebra::exterior::combinations(15, 10);
    // stride through the subsets so that no single coordinate dominates the schedule
    for k in 0..all.len() {
        if out.len() >= count {
            break;
        }
        let s = &all[(k * 1000) % all.len()];
        if !out.contains(s) {
            out.push(s.clone());
        }
    }
    out.truncate(count);
    out
}

/// Interpolate `det(P0 + t·P1)` from its values at `t = 0, 1, …, n`.
fn det_pencil(p0: &FMatrix, p1: &FMatrix) -> Result<Vec<FieldElement>> {
    let field = p0.field();
    let n = p0.rows();
    let pts: Vec<FieldElement> = (0..=n as i64).map(|k| field.from_i64(k)).collect();
    let c = field.characteristic();
    if c != 0 && c as usize <= n {
        return Err(Error::InvalidInput(format!("field too small to interpolate a degree-{n} determinant")));
    }
    let vals: Vec<FieldElement> = pts.iter().map(|t| p0.add(&p1.scale(t)).det()).collect::<Result<_>>()?;
    let vander = Matrix::from_fn(n + 1, n + 1, field.zero(), |r, c| pts[r].pow(c as u128));
    let rhs = crate::algebra::matrix::column(field, &vals);
    let sol = vander.solve(&rhs).ok_or_else(|| Error::Inconsistent("singular interpolation system".into()))?;
    Ok(sol.col(0))
}

/// Restriction of the EPW sextic to the line `λ(t) = p0 + t·p1`, as the monic
/// gcd of 10×10 minors of the pairing matrix. The zero polynomial means the
/// whole line lies in the sextic.
pub fn epw_line_degree(a: &RhoLagrangianData, p0: &EPWPoint, p1: &EPWPoint) -> Result<MultiPoly> {
    if p0 == p1 {
        return Err(Error::InvalidInput("coincident points do not span a line".into()));
    }
    let field = a.field();
    let m0 = pairing_matrix(a, p0.lambda());
    let m1 = pairing_matrix(a, p1.lambda());
    let zero = MultiPoly::zero(field, var_names("t", 1));
    let mut g = zero.clone();
    let mut used = 0;
    let mut budget = 8;
    loop {
        let schedule = minor_schedule(budget);
        for cols in &schedule[used..] {
            let c = det_pencil(&m0.select_cols(cols), &m1.select_cols(cols))?;
            g = g.univariate_gcd(&MultiPoly::from_univariate(field, "t", &c));
        }
        used = schedule.len();
        let deg = g.total_degree().unwrap_or(u32::MAX);
        if g.is_zero() || deg <= 6 || budget >= 3003 {
            return Ok(g);
        }
        budget = (budget * 2).min(3003);
    }
}

/// `dim(A ∩ (Λ²V₃)∧V₆)` for the span `V₃` of three columns, and whether it is at least 4.
pub fn rho_plane_condition(a: &RhoLagrangianData, v3: &FMatrix) -> Result<(bool, usize)> {
    if v3.rows() != 6 || v3.rank() != 3 {
        return Err(Error::InvalidInput("V3 must be spanned by 3 independent vectors of length 6".into()));
    }
    let field = a.field();
    let cols = v3.col_vecs();
    let mut gens = Vec::new();
    for (x, y) in [(0, 1), (0, 2), (1, 2)] {
        for w in 0..6 {
            let mut unit = vec![field.zero(); 6];
            unit[w] = field.one();
            gens.push(ExteriorElement::wedge_vectors(field, &[cols[x].clone(), cols[y].clone(), unit]).coeffs().to_vec());
        }
    }
    let span = Matrix::from_cols(gens, field.zero(), grade_dim(3)).column_basis();
    let d = span.intersect_column_spaces(a.basis()).cols();
    Ok((d >= 4, d))
}

/// `Π_i(e,f)` and `Γ_i(f)` for a point with `e ≠ 0`.
#[derive(Clone, Debug)]
pub struct PiGamma {
    pub pi: ProjectiveSubspace,
    pub gamma: ProjectiveSubspace,
    pub pi_is_plane: bool,
    pub gamma_is_line: bool,
}

/// Coefficient rows of the three forms `(M f)_r` over the cubic's variables,
/// or of `(Mᵀ f)_r` when `transpose` is set.
fn mf_rows(eq: &NonSyzygeticEquation, f: &[FieldElement], transpose: bool) -> FMatrix {
    let field = eq.field();
    let c = eq.coefficient_map();
    Matrix::from_fn(3, 6, field.zero(), |r, v| {
        (0..3).fold(field.zero(), |acc, j| {
            let col = if transpose { crate::gale::m_col(j, r) } else { crate::gale::m_col(r, j) };
            &acc + &(&c[(v, col)] * &f[j])
        })
    })
}

/// The pair `(e, f)` entering `Mf + eL_i` for a point `λ`, and whether `M`
/// acts transposed. For a "+" equation this is `(λ_E, λ_F)`; the "−" member
/// of a Gale pair sees the two halves exchanged: `(−λ_F, λ_E)` acting on `Mᵀ`.
fn local_parts(eq: &NonSyzygeticEquation, p: &EPWPoint) -> (Vec<FieldElement>, Vec<FieldElement>, bool) {
    if eq.sign() > 0 {
        (p.e().to_vec(), p.f().to_vec(), false)
    } else {
        (p.f().iter().map(|c| -c).collect(), p.e().to_vec(), true)
    }
}

/// Inverse of [`local_parts`].
fn point_from_local(eq: &NonSyzygeticEquation, e: &[FieldElement], f: &[FieldElement]) -> Result<EPWPoint> {
    if eq.sign() > 0 {
        EPWPoint::from_parts(e, f)
    } else {
        let neg: Vec<FieldElement> = e.iter().map(|c| -c).collect();
        EPWPoint::from_parts(f, &neg)
    }
}

fn check_index(i: usize) -> Result<()> {
    if (1..=3).contains(&i) {
        Ok(())
    } else {
        Err(Error::InvalidInput("L index must be 1, 2 or 3".into()))
    }
}

/// `Π_i(e,f)` cut by `Mf + eL_i` and `Γ_i(f)` cut by `(Mf, L_i)`, with the
/// genericity flags.
pub fn pi_gamma(eq: &NonSyzygeticEquation, i: usize, p: &EPWPoint) -> Result<PiGamma> {
    check_index(i)?;
    let (e, f, transpose) = local_parts(eq, p);
    if e.iter().all(|c| c.is_zero()) {
        return Err(Error::InvalidInput("Π needs e ≠ 0".into()));
    }
    let field = eq.field();
    let mf = mf_rows(eq, &f, transpose);
    let li = eq.form_coeffs(crate::gale::l_col(i));
    let pi_rows = Matrix::from_fn(3, 6, field.zero(), |r, v| &mf[(r, v)] + &(&e[r] * &li[v]));
    let l_row = Matrix::from_rows(vec![li], field.zero());
    let pi = ProjectiveSubspace::from_forms(&pi_rows);
    let gamma = ProjectiveSubspace::from_forms(&mf.vstack(&l_row));
    Ok(PiGamma { pi_is_plane: pi.codim() == 3, gamma_is_line: gamma.codim() == 4, pi, gamma })
}

/// Plane parameters `s0, s1, s2` used for conics.
pub fn plane_vars() -> Arc<[String]> {
    var_names("s", 3)
}

/// The residual conic of `Γ_i(f)` in `X ∩ Π_i(e,f)`, in the coordinates
/// given by `basis` (6×3, columns spanning `Π`).
#[derive(Clone, Debug)]
pub struct ResidualConic {
    pub basis: FMatrix,
    pub line_form: MultiPoly,
    pub quadric: MultiPoly,
    pub matrix: FMatrix,
}

pub fn residual_conic(eq: &NonSyzygeticEquation, i: usize, p: &EPWPoint) -> Result<ResidualConic> {
    let pg = pi_gamma(eq, i, p)?;
    if !pg.pi_is_plane || !pg.gamma_is_line {
        return Err(Error::ConditionFailed("Π_i(e,f) is not a plane or Γ_i(f) is not a line".into()));
    }
    let field = eq.field();
    let basis = pg.pi.points();
    let s = plane_vars();
    let cubic = eq.cubic_polynomial().linear_substitute(&basis, s.clone());
    let line_form = eq.l(i).linear_substitute(&basis, s.clone());
    let quadric = cubic
        .exact_div(&line_form)
        .ok_or_else(|| Error::Inconsistent("the cubic restricted to Π is not divisible by the equation of Γ".into()))?;
    let half = field
        .from_i64(2)
        .inv()
        .ok_or_else(|| Error::InvalidInput("characteristic 2 is not supported".into()))?;
    let matrix = Matrix::from_fn(3, 3, field.zero(), |a, b| {
        let mut ex = vec![0u16; 3];
        ex[a] += 1;
        ex[b] += 1;
        let c = quadric.coeff(&ex);
        if a == b {
            c
        } else {
            &c * &half
        }
    });
    Ok(ResidualConic { basis, line_form, quadric, matrix })
}

/// Output of [`epw_to_lines`]; lines are subspaces of `P⁵`.
#[derive(Clone, Debug)]
pub struct ConicLines {
    pub conic: ResidualConic,
    /// A singular point, in `P⁵` coordinates.
    pub singular_point: Vec<FieldElement>,
    /// Discriminant of the binary quadric cut on a line avoiding the vertex;
    /// zero for a double line.
    pub discriminant: FieldElement,
    pub lines: Option<(ProjectiveSubspace, ProjectiveSubspace)>,
}

/// Decomposition of a singular plane conic `sᵀSs` into lines through its vertex.
#[derive(Clone, Debug)]
pub struct ConicSplit {
    pub vertex: Vec<FieldElement>,
    /// Discriminant of the binary quadric cut on a line avoiding the vertex;
    /// zero for a double line.
    pub discriminant: FieldElement,
    /// Each line as two spanning points (columns), when the split exists over the field.
    pub lines: Option<(FMatrix, FMatrix)>,
}

/// Split a symmetric 3×3 matrix of rank 1 or 2 into its two lines.
pub fn split_conic(s: &FMatrix) -> Result<ConicSplit> {
    let field = s.field();
    let rank = s.rank();
    if rank == 3 {
        return Err(Error::Inconsistent("the conic is smooth".into()));
    }
    if rank == 0 {
        return Err(Error::Inconsistent("the conic vanishes identically".into()));
    }
    let ker = s.kernel_basis();
    let vertex = ker.col(0);
    if rank == 1 {
        return Ok(ConicSplit { vertex, discriminant: field.zero(), lines: Some((ker.clone(), ker)) });
    }
    // complete the vertex to a basis and cut the conic with the line through w1, w2
    let mut chosen = vec![vertex.clone()];
    for k in 0..3 {
        let mut unit = vec![field.zero(); 3];
        unit[k] = field.one();
        let mut trial = chosen.clone();
        trial.push(unit);
        if Matrix::from_cols(trial.clone(), field.zero(), 3).rank() == trial.len() {
            chosen = trial;
        }
    }
    let (w1, w2) = (&chosen[1], &chosen[2]);
    let form = |x: &[FieldElement], y: &[FieldElement]| {
        let sy = s.mul_vec(y);
        x.iter().zip(&sy).fold(field.zero(), |acc, (a, b)| &acc + &(a * b))
    };
    let qa = form(w1, w1);
    let qb = &form(w1, w2) * &field.from_i64(2);
    let qc = form(w2, w2);
    let disc = &(&qb * &qb) - &(&(&qa * &qc) * &field.from_i64(4));
    let Some(root) = disc.sqrt() else {
        return Ok(ConicSplit { vertex, discriminant: disc, lines: None });
    };
    let roots: Vec<(FieldElement, FieldElement)> = if qa.is_zero() {
        vec![(field.one(), field.zero()), (-&qc, qb.clone())]
    } else {
        let two_a = &qa * &field.from_i64(2);
        vec![(&(-&qb) + &root, two_a.clone()), (&(-&qb) - &root, two_a)]
    };
    let mk = |(x, y): &(FieldElement, FieldElement)| {
        let pt: Vec<FieldElement> = (0..3).map(|k| &(x * &w1[k]) + &(y * &w2[k])).collect();
        Matrix::from_cols(vec![vertex.clone(), pt], field.zero(), 3)
    };
    let lines = Some((mk(&roots[0]), mk(&roots[1])));
    Ok(ConicSplit { vertex, discriminant: disc, lines })
}

/// The singular residual conic over an EPW point, its vertex in `P⁵`
/// coordinates, and the two lines when the conic splits over the field.
pub fn epw_to_lines(eq: &NonSyzygeticEquation, i: usize, p: &EPWPoint) -> Result<ConicLines> {
    let conic = residual_conic(eq, i, p)?;
    let split = split_conic(&conic.matrix).map_err(|e| match e {
        Error::Inconsistent(m) => Error::Inconsistent(format!("residual conic over an EPW point: {m}")),
        other => other,
    })?;
    let singular_point = conic.basis.mul_vec(&split.vertex);
    let lines = split
        .lines
        .map(|(a, b)| (ProjectiveSubspace::span(&conic.basis.mul(&a)), ProjectiveSubspace::span(&conic.basis.mul(&b))));
    Ok(ConicLines { conic, singular_point, discriminant: split.discriminant, lines })
}

/// Recover the EPW point from a line on the cubic: `f` spans the kernel of
/// `M` where the line meets `L_i = 0`, and `e` is the unique vector with
/// `Π_i(e,f) = span(Γ_i(f), line)`.
pub fn line_to_epw(eq: &NonSyzygeticEquation, i: usize, line: &ProjectiveSubspace) -> Result<EPWPoint> {
    check_index(i)?;
    let field = eq.field();
    if line.dim() != 1 {
        return Err(Error::InvalidInput("expected a line".into()));
    }
    let pts = line.points();
    let cubic = eq.cubic_polynomial();
    for k in 0..pts.cols() {
        let a = pts.col(k);
        let b = pts.col((k + 1) % pts.cols());
        // the line lies on the cubic iff F vanishes at four points of it
        for t in 0..4 {
            let x: Vec<FieldElement> = a.iter().zip(&b).map(|(u, v)| u + &(v * &field.from_i64(t))).collect();
            if !cubic.eval(&x).is_zero() {
                return Err(Error::ConditionFailed("line not contained in the cubic".into()));
            }
        }
    }
    let li = eq.form_coeffs(crate::gale::l_col(i));
    let li_row = Matrix::from_rows(vec![li.clone()], field.zero());
    let meet = li_row.mul(&pts).kernel_basis();
    if meet.cols() != 1 {
        return Err(Error::ConditionFailed("line lies inside L_i = 0".into()));
    }
    let x0 = pts.mul_vec(&meet.col(0));
    let m_at = eq.m_matrix().map(field.zero(), |m| m.eval(&x0));
    if m_at.rank() != 2 {
        return Err(Error::ConditionFailed("M does not have rank 2 at the intersection point".into()));
    }
    let transpose = eq.sign() < 0;
    let m_at = if transpose { m_at.transpose() } else { m_at };
    let f = m_at.kernel_basis().col(0);
    let mf = mf_rows(eq, &f, transpose);
    let gamma = ProjectiveSubspace::from_forms(&mf.vstack(&li_row));
    if gamma.codim() != 4 {
        return Err(Error::ConditionFailed("Γ_i(f) is not a line".into()));
    }
    let plane_pts = gamma.points().hstack(&pts).column_basis();
    if plane_pts.cols() != 3 {
        return Err(Error::ConditionFailed("line and Γ_i(f) do not span a plane".into()));
    }
    let on_plane = li_row.mul(&plane_pts).row(0);
    let Some(k) = on_plane.iter().position(|c| !c.is_zero()) else {
        return Err(Error::ConditionFailed("L_i vanishes on the spanned plane".into()));
    };
    let y = plane_pts.col(k);
    let ly = &on_plane[k];
    let mfy = mf.mul_vec(&y);
    let e: Vec<FieldElement> = mfy.iter().map(|c| -&(c / ly)).collect();
    let p = point_from_local(eq, &e, &f)?;
    let check = pi_gamma(eq, i, &p)?;
    if !check.pi.forms().mul(&plane_pts).is_zero_matrix() {
        return Err(Error::Inconsistent("no e realizes the spanned plane".into()));
    }
    Ok(p)
}

/// Scan `λ = p0 + t·p1` over every `t` of a finite field (and `p1` itself),
/// returning the points that lie on the EPW sextic.
pub fn scan_line(a: &RhoLagrangianData, p0: &EPWPoint, p1: &EPWPoint) -> Result<Vec<EPWPoint>> {
    let field = a.field();
    let elems = field
        .elements()
        .ok_or_else(|| Error::InvalidInput("line scans need a finite field".into()))?;
    let mut out = Vec::new();
    for t in elems {
        let v: Vec<FieldElement> = p0.lambda().iter().zip(p1.lambda()).map(|(x, y)| x + &(&t * y)).collect();
        if let Ok(p) = EPWPoint::new(v) {
            if epw_contains(a, &p).0 && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    if epw_contains(a, p1).0 && !out.contains(p1) {
        out.push(p1.clone());
    }
    Ok(out)
}

/// Harvest at least `count` EPW points with `e ≠ 0` and `f ≠ 0` by scanning random lines.
pub fn harvest<R: Rng + ?Sized>(a: &RhoLagrangianData, count: usize, max_lines: usize, rng: &mut R) -> Result<Vec<EPWPoint>> {
    let field = a.field();
    let mut out: Vec<EPWPoint> = Vec::new();
    for _ in 0..max_lines {
        if out.len() >= count {
            break;
        }
        let p0 = EPWPoint::random(field, rng);
        let p1 = EPWPoint::random(field, rng);
        if p0 == p1 {
            continue;
        }
        for p in scan_line(a, &p0, &p1)? {
            let generic = p.e().iter().any(|c| !c.is_zero()) && p.f().iter().any(|c| !c.is_zero());
            if generic && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    if out.len() < count {
        return Err(Error::ConditionFailed(format!("harvested {} EPW points, wanted {count}", out.len())));
    }
    out.truncate(count);
    Ok(out)
}

/// Sampling test for decomposable vectors: `samples` random `v1∧v2∧v3` are
/// checked against the column span of `basis` (20 rows). Returns the first
/// decomposable vector found. Finding none is a necessary condition only.
pub fn sample_decomposable<R: Rng + ?Sized>(basis: &FMatrix, samples: usize, rng: &mut R) -> Option<ExteriorElement> {
    let field = basis.field();
    for _ in 0..samples {
        let vs: Vec<Vec<FieldElement>> = (0..3).map(|_| (0..6).map(|_| field.random(rng)).collect()).collect();
        let w = ExteriorElement::wedge_vectors(field, &vs);
        if w.is_zero() {
            continue;
        }
        let col = crate::algebra::matrix::column(field, w.coeffs());
        if basis.contains_column_space(&col) {
            return Some(w);
        }
    }
    None
}

/// Quadrics in the coordinates of `span(basis)` cutting out its decomposable
/// vectors: `ι_{e_i}ι_{e_j}(ω) ∧ ω = 0` for all `i < j`.
pub fn plucker_restriction(basis: &FMatrix) -> Vec<MultiPoly> {
    let field = basis.field();
    let n = basis.cols();
    let vars = var_names("a", n);
    let elems: Vec<ExteriorElement> =
        (0..n).map(|k| ExteriorElement::from_coeffs(field, 3, basis.col(k)).expect("20 rows")).collect();
    let unit = |i: usize| {
        let mut v = vec![field.zero(); 6];
        v[i] = field.one();
        v
    };
    let mut out: Vec<MultiPoly> = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            let contracted: Vec<ExteriorElement> =
                elems.iter().map(|w| w.contract(&unit(j)).and_then(|x| x.contract(&unit(i))).expect("grade 3")).collect();
            let mut polys = vec![MultiPoly::zero(field, vars.clone()); grade_dim(4)];
            for (k, ck) in contracted.iter().enumerate() {
                for (l, bl) in elems.iter().enumerate() {
                    let w = ck.wedge(bl).expect("grade 4");
                    for (m, c) in w.coeffs().iter().enumerate() {
                        if !c.is_zero() {
                            let mut e = vec![0u16; n];
                            e[k] += 1;
                            e[l] += 1;
                            polys[m].add_term(e, c.clone());
                        }
                    }
                }
            }
            out.extend(polys.into_iter().filter(|q| !q.is_zero()));
        }
    }
    out
}

/// Gröbner certificate that `P(span(basis))` meets the Grassmannian `G(3, 6)`
/// nowhere, over the algebraic closure of a prime field: the restricted
/// Plücker quadrics define a zero-dimensional cone.
pub fn groebner_no_decomposable(basis: &FMatrix) -> Result<bool> {
    let quadrics = plucker_restriction(basis);
    if quadrics.is_empty() {
        return Ok(basis.cols() == 0);
    }
    let gb = crate::groebner::buchberger(&quadrics)?;
    Ok(crate::groebner::is_zero_dim_cone(&gb))
}
