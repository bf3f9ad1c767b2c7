//! Finite-dimensional associative algebras as structure constants: radical,
//! block structure, characters, idempotent lifting, regular-module
//! decomposition, and commutative Hensel solving.

use crate::field::{extend_field, Embedding, Field, FieldElement};
use crate::linalg::{Matrix, Subspace};
use crate::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use std::sync::Arc;

pub type Coords = Vec<FieldElement>;
pub type SparseVec = Vec<(usize, FieldElement)>;

#[derive(Debug)]
struct AlgData {
    field: Field,
    dim: usize,
    /// mult[i * dim + j] = coordinates of e_i * e_j, sparse.
    mult: Vec<SparseVec>,
    unit: Coords,
}

/// An associative unital algebra given by structure constants. Cheap to clone.
#[derive(Clone)]
pub struct Algebra(Arc<AlgData>);

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra(dim {} over {:?})", self.dim(), self.field())
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.field() == other.field()
                && self.dim() == other.dim()
                && self.0.mult == other.0.mult
                && self.0.unit == other.0.unit)
    }
}
impl Eq for Algebra {}

pub fn zero_vec(field: &Field, dim: usize) -> Coords {
    vec![field.zero(); dim]
}

pub fn basis_vec(field: &Field, dim: usize, i: usize) -> Coords {
    let mut v = zero_vec(field, dim);
    v[i] = field.one();
    v
}

pub fn axpy(dst: &mut [FieldElement], coeff: &FieldElement, src: &[FieldElement]) {
    if coeff.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        if !s.is_zero() {
            *d = &*d + &(coeff * s);
        }
    }
}

pub fn sparsify(v: &[FieldElement]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(i, e)| (i, e.clone()))
        .collect()
}

pub fn densify(field: &Field, dim: usize, s: &SparseVec) -> Coords {
    let mut v = zero_vec(field, dim);
    for (i, c) in s {
        v[*i] = c.clone();
    }
    v
}

impl Algebra {
    pub fn new(field: Field, dim: usize, mult: Vec<SparseVec>, unit: Coords) -> Algebra {
        assert_eq!(mult.len(), dim * dim);
        assert_eq!(unit.len(), dim);
        Algebra(Arc::new(AlgData {
            field,
            dim,
            mult,
            unit,
        }))
    }

    /// Build from a dense product-on-basis function.
    pub fn from_mult_fn(
        field: &Field,
        dim: usize,
        unit: Coords,
        mut f: impl FnMut(usize, usize) -> Coords,
    ) -> Algebra {
        let mut mult = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                mult.push(sparsify(&f(i, j)));
            }
        }
        Algebra::new(field.clone(), dim, mult, unit)
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }
    pub fn dim(&self) -> usize {
        self.0.dim
    }
    pub fn unit(&self) -> &Coords {
        &self.0.unit
    }
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.0.mult[i * self.0.dim + j]
    }

    pub fn mul_vec(&self, a: &[FieldElement], b: &[FieldElement]) -> Coords {
        let mut out = zero_vec(self.field(), self.dim());
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.mul_basis(i, j) {
                    out[*k] = &out[*k] + &(&xy * c);
                }
            }
        }
        out
    }

    pub fn pow_vec(&self, a: &[FieldElement], mut e: u64) -> Coords {
        let mut result = self.unit().clone();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_vec(&result, &base);
            }
            base = self.mul_vec(&base, &base);
            e >>= 1;
        }
        result
    }

    /// Matrix of left multiplication x -> a*x.
    pub fn lmul_matrix(&self, a: &[FieldElement]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zero(self.field(), n, n);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in self.mul_basis(i, j) {
                    m[(*k, j)] = &m[(*k, j)] + &(x * c);
                }
            }
        }
        m
    }

    /// Matrix of right multiplication x -> x*a.
    pub fn rmul_matrix(&self, a: &[FieldElement]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zero(self.field(), n, n);
        for (j, y) in a.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            for i in 0..n {
                for (k, c) in self.mul_basis(i, j) {
                    m[(*k, i)] = &m[(*k, i)] + &(y * c);
                }
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in 0..i {
                let ij = densify(self.field(), n, self.mul_basis(i, j));
                let ji = densify(self.field(), n, self.mul_basis(j, i));
                if ij != ji {
                    return false;
                }
            }
        }
        true
    }

    /// Exhaustive associativity and two-sided-unit check on basis elements.
    pub fn verify(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            let ei = basis_vec(self.field(), n, i);
            if self.mul_vec(self.unit(), &ei) != ei || self.mul_vec(&ei, self.unit()) != ei {
                return Err(Error::Verification(format!("unit law fails at basis {i}")));
            }
        }
        for i in 0..n {
            let ei = basis_vec(self.field(), n, i);
            for j in 0..n {
                let ij = densify(self.field(), n, self.mul_basis(i, j));
                for k in 0..n {
                    let ek = basis_vec(self.field(), n, k);
                    let left = self.mul_vec(&ij, &ek);
                    let jk = densify(self.field(), n, self.mul_basis(j, k));
                    let right = self.mul_vec(&ei, &jk);
                    if left != right {
                        return Err(Error::Verification(format!(
                            "associativity fails at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn extend_scalars(&self, emb: &Embedding) -> Algebra {
        let map = |v: &Coords| -> Coords { v.iter().map(|e| emb.apply(e)).collect() };
        let mult = self
            .0
            .mult
            .iter()
            .map(|s| {
                s.iter()
                    .map(|(k, c)| (*k, emb.apply(c)))
                    .collect::<SparseVec>()
            })
            .collect();
        Algebra::new(emb.target.clone(), self.dim(), mult, map(self.unit()))
    }

    /// Structure constants of the subalgebra spanned by `basis` (rows must be
    /// closed under multiplication and contain the unit).
    pub fn subalgebra(&self, basis: &Subspace) -> Result<(Algebra, Matrix)> {
        let d = basis.dim();
        let rows = Matrix::from_fn(self.field(), d, self.dim(), |r, c| {
            basis.basis_row(r)[c].clone()
        });
        let cols = rows.transpose();
        let coords_of = |v: &Coords| -> Result<Coords> {
            cols.solve(v)
                .ok_or_else(|| Error::Verification("not closed: product leaves subalgebra".into()))
        };
        let mut mult = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let prod = self.mul_vec(basis.basis_row(i), basis.basis_row(j));
                mult.push(sparsify(&coords_of(&prod)?));
            }
        }
        let unit = coords_of(self.unit())?;
        let alg = Algebra::new(self.field().clone(), d, mult, unit);
        Ok((alg, cols))
    }
}

// ---------------------------------------------------------------------------
// ideals and quotients
// ---------------------------------------------------------------------------

/// Two-sided ideal of an algebra, stored as an echelonized subspace.
#[derive(Clone, Debug)]
pub struct Ideal {
    pub parent: Algebra,
    pub space: Subspace,
}

impl Ideal {
    pub fn new(parent: &Algebra, space: Subspace) -> Result<Ideal> {
        if !is_two_sided_ideal(parent, &space) {
            return Err(Error::Verification("subspace is not a two-sided ideal".into()));
        }
        Ok(Ideal {
            parent: parent.clone(),
            space,
        })
    }
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

pub fn is_two_sided_ideal(a: &Algebra, s: &Subspace) -> bool {
    let n = a.dim();
    for r in 0..s.dim() {
        let v = s.basis_row(r);
        for i in 0..n {
            let ei = basis_vec(a.field(), n, i);
            if !s.contains(&a.mul_vec(&ei, v)) || !s.contains(&a.mul_vec(v, &ei)) {
                return false;
            }
        }
    }
    true
}

/// Smallest two-sided ideal containing the given vectors.
pub fn ideal_generated_by(a: &Algebra, gens: &[Coords]) -> Subspace {
    let n = a.dim();
    let mut space = Subspace::from_spanning(a.field(), n, gens.to_vec());
    loop {
        let mut new_rows: Vec<Coords> = Vec::new();
        for r in 0..space.dim() {
            let v = space.basis_row(r);
            for i in 0..n {
                let ei = basis_vec(a.field(), n, i);
                for w in [a.mul_vec(&ei, v), a.mul_vec(v, &ei)] {
                    if !space.contains(&w) {
                        new_rows.push(w);
                    }
                }
            }
        }
        if new_rows.is_empty() {
            return space;
        }
        for r in 0..space.dim() {
            new_rows.push(space.basis_row(r).to_vec());
        }
        space = Subspace::from_spanning(a.field(), n, new_rows);
    }
}

/// Span of all products u*v for u in S, v in T.
pub fn product_space(a: &Algebra, s: &Subspace, t: &Subspace) -> Subspace {
    let mut rows = Vec::new();
    for i in 0..s.dim() {
        for j in 0..t.dim() {
            rows.push(a.mul_vec(s.basis_row(i), t.basis_row(j)));
        }
    }
    Subspace::from_spanning(a.field(), a.dim(), rows)
}

/// Least m with S^m = 0, or None when the power chain stabilizes nonzero.
pub fn nilpotency_index(a: &Algebra, s: &Subspace) -> Option<usize> {
    if s.dim() == 0 {
        return Some(1);
    }
    let mut power = s.clone();
    let mut m = 1;
    loop {
        let next = product_space(a, &power, s);
        if next.dim() == 0 {
            return Some(m + 1);
        }
        if next.dim() >= power.dim() {
            return None;
        }
        power = next;
        m += 1;
    }
}

/// Projection data for a quotient algebra A/I.
pub struct QuotientMap {
    /// indices in A of the chosen coset representatives (the standard basis
    /// vectors at the non-pivot columns of I)
    pub reps: Vec<usize>,
    /// (dim A/I) x (dim A) projection matrix
    pub proj: Matrix,
    /// (dim A) x (dim A/I) section matrix sending quotient basis to reps
    pub lift: Matrix,
}

impl QuotientMap {
    pub fn project(&self, v: &[FieldElement]) -> Coords {
        self.proj.apply(v)
    }
    pub fn lift_vec(&self, v: &[FieldElement]) -> Coords {
        self.lift.apply(v)
    }
}

pub fn quotient_algebra(a: &Algebra, ideal: &Subspace) -> Result<(Algebra, QuotientMap)> {
    if !is_two_sided_ideal(a, ideal) {
        return Err(Error::InvalidInput("quotient by a non-ideal".into()));
    }
    let n = a.dim();
    let f = a.field();
    let reps = ideal.complement_coords();
    let q = reps.len();
    let mut proj = Matrix::zero(f, q, n);
    for c in 0..n {
        let reduced = ideal.reduce(&basis_vec(f, n, c));
        for (qi, &rc) in reps.iter().enumerate() {
            proj[(qi, c)] = reduced[rc].clone();
        }
    }
    let mut lift = Matrix::zero(f, n, q);
    for (qi, &rc) in reps.iter().enumerate() {
        lift[(rc, qi)] = f.one();
    }
    let unit_q = proj.apply(a.unit());
    let mut mult = Vec::with_capacity(q * q);
    for i in 0..q {
        for j in 0..q {
            let prod = a.mul_vec(&basis_vec(f, n, reps[i]), &basis_vec(f, n, reps[j]));
            mult.push(sparsify(&proj.apply(&prod)));
        }
    }
    let alg = Algebra::new(f.clone(), q, mult, unit_q);
    Ok((alg, QuotientMap { reps, proj, lift }))
}

// ---------------------------------------------------------------------------
// radical
// ---------------------------------------------------------------------------

fn frobenius_inverse(e: &FieldElement, i: usize) -> FieldElement {
    let k = e.field().k();
    let j = (k - i % k) % k;
    let mut out = e.clone();
    for _ in 0..j {
        out = out.pow(e.field().p());
    }
    out
}

/// One pass of the characteristic-p radical chain on `a`. The result always
/// contains Rad(a); semilinearity of the char-poly-coefficient forms makes it
/// exactly Rad(a), and every solution is re-verified against the defining
/// vanishing conditions on the way out.
fn radical_chain(a: &Algebra) -> Result<Subspace> {
    let n = a.dim();
    let f = a.field();
    let p = f.p();
    let mut space = Subspace::full(f, n);
    let mut l = 0;
    let mut pl = 1u64;
    while pl * p <= n as u64 {
        pl *= p;
        l += 1;
    }
    for i in 0..=l {
        if space.dim() == 0 {
            break;
        }
        let pi = (p as u128).pow(i as u32) as u64;
        if pi > n as u64 {
            break;
        }
        let coeff_index = n - pi as usize;
        let d = space.dim();
        // T[r][s] = coefficient of t^(n - p^i) in charpoly(L_{b_r * b_s})
        let mut t = Matrix::zero(f, d, d);
        for r in 0..d {
            for s in 0..d {
                let prod = a.mul_vec(space.basis_row(r), space.basis_row(s));
                let cp = a.lmul_matrix(&prod).char_poly();
                t[(r, s)] = cp[coeff_index].clone();
            }
        }
        // solve sum_r d_r T[r][s] = 0 with d_r = c_r^(p^i)
        let kernel = t.transpose().kernel();
        let mut rows = Vec::new();
        for kr in 0..kernel.dim() {
            let dvec = kernel.basis_row(kr);
            let mut v = zero_vec(f, n);
            for (r, dcoef) in dvec.iter().enumerate() {
                let c = frobenius_inverse(dcoef, i);
                axpy(&mut v, &c, space.basis_row(r));
            }
            rows.push(v);
        }
        let next = Subspace::from_spanning(f, n, rows);
        // guard against a semilinearity failure: every member must satisfy
        // the defining vanishing conditions
        for r in 0..next.dim() {
            for s in 0..space.dim() {
                let prod = a.mul_vec(next.basis_row(r), space.basis_row(s));
                let cp = a.lmul_matrix(&prod).char_poly();
                if !cp[coeff_index].is_zero() {
                    return Err(Error::Verification(
                        "radical chain: semilinear solve produced a false solution".into(),
                    ));
                }
            }
        }
        space = next;
    }
    Ok(space)
}

/// Jacobson radical: the largest nilpotent two-sided ideal. Post-verified:
/// the result is a nilpotent ideal and the chain vanishes on the quotient.
pub fn radical(a: &Algebra) -> Result<Subspace> {
    let n = a.dim();
    let f = a.field();
    let mut rad = Subspace::zero(f, n);
    loop {
        let (q, qmap) = quotient_algebra(a, &rad)?;
        let cand = radical_chain(&q)?;
        if cand.dim() == 0 {
            break;
        }
        if !is_two_sided_ideal(&q, &cand) {
            return Err(Error::Verification(
                "radical chain output is not an ideal".into(),
            ));
        }
        if nilpotency_index(&q, &cand).is_none() {
            return Err(Error::Verification(
                "radical chain output is not nilpotent".into(),
            ));
        }
        let mut rows: Vec<Coords> = Vec::new();
        for r in 0..cand.dim() {
            rows.push(qmap.lift_vec(cand.basis_row(r)));
        }
        for r in 0..rad.dim() {
            rows.push(rad.basis_row(r).to_vec());
        }
        rad = Subspace::from_spanning(f, n, rows);
    }
    debug_assert!(is_two_sided_ideal(a, &rad));
    debug_assert!(nilpotency_index(a, &rad).is_some());
    Ok(rad)
}

/// Nilradical of a commutative algebra: kernel of the q^M-power map.
pub fn nilradical_commutative(a: &Algebra) -> Result<Subspace> {
    if !a.is_commutative() {
        return Err(Error::InvalidInput("nilradical: algebra not commutative".into()));
    }
    let n = a.dim();
    let f = a.field();
    let q = f.order();
    let mut qm: u64 = 1;
    while qm < n as u64 {
        qm = qm.saturating_mul(q);
    }
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        cols.push(a.pow_vec(&basis_vec(f, n, i), qm));
    }
    let mat = Matrix::from_fn(f, n, n, |r, c| cols[c][r].clone());
    Ok(mat.kernel())
}

// ---------------------------------------------------------------------------
// etale splitting and characters
// ---------------------------------------------------------------------------

fn eval_poly(coeffs: &[FieldElement], x: &FieldElement) -> FieldElement {
    let f = x.field();
    let mut acc = f.zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

fn min_poly_of_mult_on_corner(
    a: &Algebra,
    c: &Coords,
    unit: &Coords,
    corner_dim: usize,
) -> Vec<FieldElement> {
    let f = a.field();
    let n = a.dim();
    let mut powers: Vec<Coords> = vec![unit.clone()];
    loop {
        let next = a.mul_vec(powers.last().unwrap(), c);
        let sp = Subspace::from_spanning(f, n, powers.clone());
        if sp.contains(&next) {
            let mat = Matrix::from_fn(f, n, powers.len(), |r, col| powers[col][r].clone());
            let sol = mat.solve(&next).expect("dependency solvable");
            let deg = powers.len();
            let mut mp = vec![f.zero(); deg + 1];
            for (i, coef) in sol.iter().enumerate() {
                mp[i] = -coef;
            }
            mp[deg] = f.one();
            return mp;
        }
        assert!(
            powers.len() <= corner_dim,
            "min poly exceeded corner dimension"
        );
        powers.push(next);
    }
}

/// Complete orthogonal primitive idempotents of a commutative etale algebra,
/// with the residue degree of each factor.
pub fn split_etale(a: &Algebra) -> Result<Vec<(Coords, usize)>> {
    let n = a.dim();
    let f = a.field();
    let q = f.order();
    // the Frobenius-fixed subalgebra is spanned by the primitive idempotents
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let bi = basis_vec(f, n, i);
        let mut v = a.pow_vec(&bi, q);
        for (j, b) in bi.iter().enumerate() {
            v[j] = &v[j] - b;
        }
        cols.push(v);
    }
    let fixed = Matrix::from_fn(f, n, n, |r, c| cols[c][r].clone()).kernel();

    let mut idems: Vec<Coords> = vec![a.unit().clone()];
    for vrow in 0..fixed.dim() {
        let v = fixed.basis_row(vrow).to_vec();
        let mut next_idems = Vec::new();
        for e in idems {
            let corner_rows: Vec<Coords> = (0..n)
                .map(|i| a.mul_vec(&basis_vec(f, n, i), &e))
                .collect();
            let corner_dim = Subspace::from_spanning(f, n, corner_rows).dim();
            if corner_dim <= 1 {
                next_idems.push(e);
                continue;
            }
            let c = a.mul_vec(&v, &e);
            let mp = min_poly_of_mult_on_corner(a, &c, &e, corner_dim);
            let roots: Vec<FieldElement> = f
                .elements()
                .filter(|x| eval_poly(&mp, x).is_zero())
                .collect();
            if roots.len() <= 1 {
                next_idems.push(e);
                continue;
            }
            // Lagrange projections e_r = prod_{s != r} (c - root_s e)/(root_r - root_s)
            for r in &roots {
                let mut proj = e.clone();
                for s in &roots {
                    if s == r {
                        continue;
                    }
                    let denom = (r - s).inv().unwrap();
                    let mut term = c.clone();
                    for (j, ej) in e.iter().enumerate() {
                        term[j] = &term[j] - &(s * ej);
                    }
                    for t in term.iter_mut() {
                        *t = &*t * &denom;
                    }
                    proj = a.mul_vec(&proj, &term);
                }
                if proj.iter().any(|x| !x.is_zero()) {
                    next_idems.push(proj);
                }
            }
        }
        idems = next_idems;
    }
    // verify: orthogonal idempotents summing to 1
    let mut total = zero_vec(f, n);
    for e in &idems {
        if a.mul_vec(e, e) != *e {
            return Err(Error::Verification(
                "etale split produced a non-idempotent".into(),
            ));
        }
        for (i, x) in e.iter().enumerate() {
            total[i] = &total[i] + x;
        }
    }
    for (i, e1) in idems.iter().enumerate() {
        for e2 in idems.iter().skip(i + 1) {
            if a.mul_vec(e1, e2).iter().any(|x| !x.is_zero()) {
                return Err(Error::Verification("etale split not orthogonal".into()));
            }
        }
    }
    if &total != a.unit() {
        return Err(Error::Verification("etale split does not sum to 1".into()));
    }
    let mut out = Vec::new();
    for e in idems {
        let corner_rows: Vec<Coords> = (0..n)
            .map(|i| a.mul_vec(&basis_vec(f, n, i), &e))
            .collect();
        let d = Subspace::from_spanning(f, n, corner_rows).dim();
        out.push((e, d));
    }
    out.sort_by_key(|(e, _)| e.iter().map(|x| x.index()).collect::<Vec<_>>());
    Ok(out)
}

/// The set of algebra homomorphisms A -> k', where k' is the minimal
/// splitting extension of the commutative semisimple quotient of A.
pub struct CharacterSet {
    /// the algebra over the (possibly extended) coefficient field
    pub algebra: Algebra,
    pub field: Field,
    pub ext_degree: usize,
    /// each character as a coordinate row on the basis of `algebra`
    pub chars: Vec<Coords>,
}

pub fn characters(a: &Algebra) -> Result<CharacterSet> {
    characters_inner(a, 1, 0)
}

fn characters_inner(a: &Algebra, ext_so_far: usize, depth: usize) -> Result<CharacterSet> {
    if depth > 2 {
        return Err(Error::Verification(
            "character splitting did not stabilize".into(),
        ));
    }
    let n = a.dim();
    let f = a.field();
    // commutative quotient
    let mut comms = Vec::new();
    for i in 0..n {
        for j in 0..i {
            let ij = a.mul_vec(&basis_vec(f, n, i), &basis_vec(f, n, j));
            let ji = a.mul_vec(&basis_vec(f, n, j), &basis_vec(f, n, i));
            let mut d = ij;
            for (x, y) in d.iter_mut().zip(ji.iter()) {
                *x = &*x - y;
            }
            comms.push(d);
        }
    }
    let comm_ideal = ideal_generated_by(a, &comms);
    if comm_ideal.dim() == n {
        return Ok(CharacterSet {
            algebra: a.clone(),
            field: f.clone(),
            ext_degree: ext_so_far,
            chars: Vec::new(),
        });
    }
    let (b, bmap) = quotient_algebra(a, &comm_ideal)?;
    let nil = nilradical_commutative(&b)?;
    let (c, cmap) = quotient_algebra(&b, &nil)?;
    let factors = split_etale(&c)?;
    let lcm = factors
        .iter()
        .map(|(_, d)| *d)
        .fold(1usize, |acc, d| acc * d / gcd_usize(acc, d));
    if lcm > 1 {
        let (_, emb) = extend_field(f, lcm)?;
        let ext = a.extend_scalars(&emb);
        return characters_inner(&ext, ext_so_far * lcm, depth + 1);
    }
    // every factor is one-dimensional: read off the characters
    let mut chars = Vec::new();
    for (e, _) in &factors {
        // chi(z) for z in C: z*e = chi(z) e
        let pos = e.iter().position(|x| !x.is_zero()).unwrap();
        let inv = e[pos].inv().unwrap();
        let mut chi_c = Vec::with_capacity(c.dim());
        for i in 0..c.dim() {
            let ze = c.mul_vec(&basis_vec(f, c.dim(), i), e);
            chi_c.push(&ze[pos] * &inv);
        }
        // pull back along A -> B -> C
        let mut chi_a = zero_vec(f, n);
        for (i, slot) in chi_a.iter_mut().enumerate() {
            let vb = bmap.project(&basis_vec(f, n, i));
            let vc = cmap.project(&vb);
            let mut acc = f.zero();
            for (j, x) in vc.iter().enumerate() {
                acc = &acc + &(x * &chi_c[j]);
            }
            *slot = acc;
        }
        chars.push(chi_a);
    }
    // verify multiplicativity exactly
    for chi in &chars {
        let ev = |v: &Coords| -> FieldElement {
            let mut acc = f.zero();
            for (j, x) in v.iter().enumerate() {
                acc = &acc + &(x * &chi[j]);
            }
            acc
        };
        if !ev(a.unit()).is_one() {
            return Err(Error::Verification("character fails chi(1) = 1".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let prod = a.mul_vec(&basis_vec(f, n, i), &basis_vec(f, n, j));
                if ev(&prod) != &chi[i] * &chi[j] {
                    return Err(Error::Verification("character not multiplicative".into()));
                }
            }
        }
    }
    chars.sort_by_key(|c| c.iter().map(|e| e.index()).collect::<Vec<_>>());
    Ok(CharacterSet {
        algebra: a.clone(),
        field: f.clone(),
        ext_degree: ext_so_far,
        chars,
    })
}

pub fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

pub fn lcm_usize(a: usize, b: usize) -> usize {
    a * b / gcd_usize(a, b)
}

// ---------------------------------------------------------------------------
// idempotent lifting and block decomposition
// ---------------------------------------------------------------------------

/// Complete set of orthogonal primitive idempotents, lifted from A/Jac by
/// iterated p-th powering.
pub fn lift_idempotents(a: &Algebra) -> Result<Vec<Coords>> {
    let rad = radical(a)?;
    let (q, qmap) = quotient_algebra(a, &rad)?;
    let prim_q = primitive_idempotents_semisimple(&q)?;
    let n = a.dim();
    let f = a.field();
    let mut lifted: Vec<Coords> = Vec::new();
    let mut fcompl = a.unit().clone(); // 1 - sum of lifted so far
    for ebar in &prim_q {
        let pre = qmap.lift_vec(ebar);
        let cornered = a.mul_vec(&a.mul_vec(&fcompl, &pre), &fcompl);
        let mut u = cornered;
        let mut iters = 0;
        while a.mul_vec(&u, &u) != u {
            u = a.pow_vec(&u, f.p());
            iters += 1;
            if iters > 200 {
                return Err(Error::Verification(
                    "idempotent p-power lift did not converge".into(),
                ));
            }
        }
        if qmap.project(&u) != *ebar {
            return Err(Error::Verification(
                "lifted idempotent has wrong residue".into(),
            ));
        }
        for (i, x) in u.iter().enumerate() {
            fcompl[i] = &fcompl[i] - x;
        }
        lifted.push(u);
    }
    if fcompl.iter().any(|x| !x.is_zero()) {
        return Err(Error::Verification(
            "lifted idempotents do not sum to 1".into(),
        ));
    }
    for (i, e1) in lifted.iter().enumerate() {
        for (j, e2) in lifted.iter().enumerate() {
            let prod = a.mul_vec(e1, e2);
            let expect = if i == j { e1.clone() } else { zero_vec(f, n) };
            if prod != expect {
                return Err(Error::Verification(
                    "lifted idempotents not orthogonal".into(),
                ));
            }
        }
    }
    Ok(lifted)
}

/// Complete orthogonal primitive idempotents of a semisimple algebra.
fn primitive_idempotents_semisimple(q: &Algebra) -> Result<Vec<Coords>> {
    let n = q.dim();
    let f = q.field();
    let mut work: Vec<Coords> = vec![q.unit().clone()];
    let mut done: Vec<Coords> = Vec::new();
    let mut rng = ChaCha12Rng::seed_from_u64(0x1de);
    while let Some(e) = work.pop() {
        let mut rows = Vec::new();
        for i in 0..n {
            rows.push(q.mul_vec(&q.mul_vec(&e, &basis_vec(f, n, i)), &e));
        }
        let corner = Subspace::from_spanning(f, n, rows);
        if corner.dim() <= 1 {
            done.push(e);
            continue;
        }
        match split_corner(q, &e, &corner, &mut rng)? {
            Some(parts) => work.extend(parts),
            None => done.push(e),
        }
    }
    done.sort_by_key(|e| e.iter().map(|x| x.index()).collect::<Vec<_>>());
    Ok(done)
}

/// Try to split the corner eQe of a semisimple algebra into smaller
/// orthogonal idempotents; None means the corner is a division algebra.
fn split_corner(
    q: &Algebra,
    e: &Coords,
    corner: &Subspace,
    rng: &mut ChaCha12Rng,
) -> Result<Option<Vec<Coords>>> {
    let n = q.dim();
    let f = q.field();
    let qsize = f.order();
    let mut qm = 1u64;
    while qm < n as u64 {
        qm = qm.saturating_mul(qsize);
    }
    let dim = corner.dim();
    let mut candidates: Vec<Coords> = (0..dim).map(|i| corner.basis_row(i).to_vec()).collect();
    for i in 0..dim.min(6) {
        for j in 0..dim.min(6) {
            candidates.push(q.mul_vec(corner.basis_row(i), corner.basis_row(j)));
        }
    }
    for _ in 0..400 {
        let mut v = zero_vec(f, n);
        for i in 0..dim {
            let c = f.random(rng);
            axpy(&mut v, &c, corner.basis_row(i));
        }
        candidates.push(v);
    }
    for c in candidates {
        // kill the nilpotent part of c inside F_q[c]
        let s = q.pow_vec(&c, qm);
        let mp = min_poly_of_mult_on_corner(q, &s, e, dim);
        let deg = mp.len() - 1;
        if deg <= 1 {
            continue;
        }
        let roots: Vec<FieldElement> = f
            .elements()
            .filter(|x| eval_poly(&mp, x).is_zero())
            .collect();
        if roots.is_empty() || (roots.len() == 1 && deg == 1) {
            continue;
        }
        if roots.len() < 2 && roots.len() == deg {
            continue;
        }
        // split off the rational eigen-projections; collapse each to an
        // idempotent by p-powering, keep any nonrational remainder whole
        let mut parts: Vec<Coords> = Vec::new();
        let mut covered = zero_vec(f, n);
        for r in &roots {
            let mut proj = e.clone();
            for rs in &roots {
                if rs == r {
                    continue;
                }
                let denom = (r - rs).inv().unwrap();
                let mut term = s.clone();
                for (j, ej) in e.iter().enumerate() {
                    term[j] = &term[j] - &(rs * ej);
                }
                for t in term.iter_mut() {
                    *t = &*t * &denom;
                }
                proj = q.mul_vec(&proj, &term);
            }
            let mut u = proj;
            let mut iters = 0;
            while q.mul_vec(&u, &u) != u {
                u = q.pow_vec(&u, f.p());
                iters += 1;
                if iters > 200 {
                    return Err(Error::Verification(
                        "corner split projection did not converge".into(),
                    ));
                }
            }
            if u.iter().any(|x| !x.is_zero()) {
                for (i, x) in u.iter().enumerate() {
                    covered[i] = &covered[i] + x;
                }
                parts.push(u);
            }
        }
        let mut rest = e.clone();
        for (i, x) in covered.iter().enumerate() {
            rest[i] = &rest[i] - x;
        }
        if rest.iter().any(|x| !x.is_zero()) {
            parts.push(rest);
        }
        if parts.len() >= 2 {
            return Ok(Some(parts));
        }
    }
    // no split found: a field corner must be commutative
    for i in 0..corner.dim() {
        for j in 0..i {
            let ij = q.mul_vec(corner.basis_row(i), corner.basis_row(j));
            let ji = q.mul_vec(corner.basis_row(j), corner.basis_row(i));
            if ij != ji {
                return Err(Error::Verification(
                    "failed to split a noncommutative corner of a semisimple algebra".into(),
                ));
            }
        }
    }
    Ok(None)
}

/// One Wedderburn block of A/Jac(A).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BlockInfo {
    /// matrix size n of the block M_n(F_{q^d})
    pub matrix_size: usize,
    /// residue degree d over the coefficient field
    pub residue_degree: usize,
}

pub struct BlockStructure {
    pub radical_dim: usize,
    pub blocks: Vec<BlockInfo>,
}

fn central_idempotents_semisimple(q: &Algebra) -> Result<Vec<(Coords, usize)>> {
    let n = q.dim();
    let f = q.field();
    let mut stacked = Matrix::zero(f, n * n, n);
    for bi in 0..n {
        let ei = basis_vec(f, n, bi);
        let m = q.lmul_matrix(&ei).sub(&q.rmul_matrix(&ei));
        for r in 0..n {
            for c in 0..n {
                stacked[(bi * n + r, c)] = m[(r, c)].clone();
            }
        }
    }
    let center = stacked.kernel();
    let (zalg, _) = q.subalgebra(&center)?;
    let factors = split_etale(&zalg)?;
    let mut out = Vec::new();
    for (ez, d) in factors {
        let mut v = zero_vec(f, n);
        for (i, c) in ez.iter().enumerate() {
            axpy(&mut v, &c.clone(), center.basis_row(i));
        }
        out.push((v, d));
    }
    Ok(out)
}

/// Wedderburn block data of A/Jac(A) over the base field, without extension.
pub fn block_structure(a: &Algebra) -> Result<BlockStructure> {
    let rad = radical(a)?;
    let (q, _) = quotient_algebra(a, &rad)?;
    let n = q.dim();
    let f = q.field();
    let centrals = central_idempotents_semisimple(&q)?;
    let mut blocks = Vec::new();
    for (ez, d) in &centrals {
        let mut brows = Vec::new();
        for i in 0..n {
            brows.push(q.mul_vec(&basis_vec(f, n, i), ez));
        }
        let bdim = Subspace::from_spanning(f, n, brows).dim();
        let m2 = bdim / d;
        let msize = (m2 as f64).sqrt().round() as usize;
        if msize * msize * d != bdim {
            return Err(Error::Verification(format!(
                "block dimension {bdim} is not n^2 * {d}"
            )));
        }
        blocks.push(BlockInfo {
            matrix_size: msize,
            residue_degree: *d,
        });
    }
    blocks.sort();
    Ok(BlockStructure {
        radical_dim: rad.dim(),
        blocks,
    })
}

/// Simple-module dimensions over the algebraic closure, as a sorted multiset.
pub fn simple_dims_geometric(bs: &BlockStructure) -> Vec<usize> {
    let mut v = Vec::new();
    for b in &bs.blocks {
        for _ in 0..b.residue_degree {
            v.push(b.matrix_size);
        }
    }
    v.sort();
    v
}

/// Number of 1-dimensional characters over the algebraic closure.
pub fn character_count_geometric(bs: &BlockStructure) -> usize {
    bs.blocks
        .iter()
        .filter(|b| b.matrix_size == 1)
        .map(|b| b.residue_degree)
        .sum()
}

/// Decomposition data of the regular module over a splitting extension.
pub struct RegularDecomposition {
    /// the algebra over the splitting field
    pub algebra: Algebra,
    pub ext_degree: usize,
    /// (dim V, dim P(V), multiplicity of P(V) in the regular module)
    pub entries: Vec<(usize, usize, usize)>,
    /// one lifted primitive idempotent per simple, aligned with `entries`
    pub idempotents: Vec<Coords>,
    pub radical: Subspace,
}

pub fn decompose_regular(a: &Algebra) -> Result<RegularDecomposition> {
    let bs = block_structure(a)?;
    let lcm = bs
        .blocks
        .iter()
        .map(|b| b.residue_degree)
        .fold(1usize, lcm_usize);
    let (alg, ext) = if lcm > 1 {
        let (_, emb) = extend_field(a.field(), lcm)?;
        (a.extend_scalars(&emb), lcm)
    } else {
        (a.clone(), 1)
    };
    let rad = radical(&alg)?;
    let (q, qmap) = quotient_algebra(&alg, &rad)?;
    let centrals = central_idempotents_semisimple(&q)?;
    let lifted = lift_idempotents(&alg)?;
    // block index of each lifted idempotent: z_b acts as identity on it
    let mut grouped: Vec<Vec<Coords>> = vec![Vec::new(); centrals.len()];
    for e in &lifted {
        let ebar = qmap.project(e);
        let mut assigned = None;
        for (b, (z, _)) in centrals.iter().enumerate() {
            if q.mul_vec(z, &ebar) == ebar {
                assigned = Some(b);
                break;
            }
        }
        let b = assigned
            .ok_or_else(|| Error::Verification("idempotent not confined to one block".into()))?;
        grouped[b].push(e.clone());
    }
    let mut entries = Vec::new();
    let mut reps = Vec::new();
    for (b, (_, d)) in centrals.iter().enumerate() {
        if *d != 1 {
            return Err(Error::Verification("block not split after extension".into()));
        }
        let mine = &grouped[b];
        let nb = mine.len();
        let e0 = mine
            .first()
            .ok_or_else(|| Error::Verification("block without idempotents".into()))?;
        let dim_p = alg.rmul_matrix(e0).rank();
        entries.push((nb, dim_p, nb));
        reps.push(e0.clone());
    }
    let total: usize = entries.iter().map(|(v, p, _)| v * p).sum();
    if total != alg.dim() {
        return Err(Error::Verification(format!(
            "regular decomposition sums to {total}, expected {}",
            alg.dim()
        )));
    }
    let mut order: Vec<usize> = (0..entries.len()).collect();
    order.sort_by_key(|&i| (entries[i].0, entries[i].1));
    let entries: Vec<_> = order.iter().map(|&i| entries[i]).collect();
    let reps: Vec<_> = order.iter().map(|&i| reps[i].clone()).collect();
    Ok(RegularDecomposition {
        algebra: alg,
        ext_degree: ext,
        entries,
        idempotents: reps,
        radical: rad,
    })
}

// ---------------------------------------------------------------------------
// modules
// ---------------------------------------------------------------------------

/// A left module over a structure-constant algebra: one action matrix per
/// algebra basis element.
#[derive(Clone)]
pub struct ModuleRep {
    pub algebra: Algebra,
    pub dim: usize,
    pub action: Vec<Matrix>,
}

impl std::fmt::Debug for ModuleRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ModuleRep(dim {})", self.dim)
    }
}

impl ModuleRep {
    pub fn action_of(&self, a: &[FieldElement]) -> Matrix {
        let f = self.algebra.field();
        let mut m = Matrix::zero(f, self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            m = m.add(&self.action[i].scale(c));
        }
        m
    }

    pub fn verify(&self) -> Result<()> {
        let alg = &self.algebra;
        let n = alg.dim();
        if !self.action_of(alg.unit()).is_identity() {
            return Err(Error::Verification(
                "module: unit does not act as identity".into(),
            ));
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.action[i].mul(&self.action[j]);
                let mut rhs = Matrix::zero(alg.field(), self.dim, self.dim);
                for (k, c) in alg.mul_basis(i, j) {
                    rhs = rhs.add(&self.action[*k].scale(c));
                }
                if lhs != rhs {
                    return Err(Error::Verification(format!(
                        "module action violates multiplication at ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn regular(a: &Algebra) -> ModuleRep {
        let n = a.dim();
        let action = (0..n)
            .map(|i| a.lmul_matrix(&basis_vec(a.field(), n, i)))
            .collect();
        ModuleRep {
            algebra: a.clone(),
            dim: n,
            action,
        }
    }

    pub fn one_dimensional(a: &Algebra, chi: &Coords) -> ModuleRep {
        let f = a.field();
        let action = chi
            .iter()
            .map(|c| {
                let mut m = Matrix::zero(f, 1, 1);
                m[(0, 0)] = c.clone();
                m
            })
            .collect();
        ModuleRep {
            algebra: a.clone(),
            dim: 1,
            action,
        }
    }

    /// Twist the action by an algebra automorphism: a acts as sigma(a).
    pub fn twist_by(&self, sigma: &Matrix) -> ModuleRep {
        let n = self.algebra.dim();
        let f = self.algebra.field();
        let action = (0..n)
            .map(|i| {
                let col: Coords = (0..n).map(|r| sigma[(r, i)].clone()).collect();
                let mut m = Matrix::zero(f, self.dim, self.dim);
                for (j, c) in col.iter().enumerate() {
                    if !c.is_zero() {
                        m = m.add(&self.action[j].scale(c));
                    }
                }
                m
            })
            .collect();
        ModuleRep {
            algebra: self.algebra.clone(),
            dim: self.dim,
            action,
        }
    }
}

pub fn hom_space_dim(v: &ModuleRep, w: &ModuleRep) -> Result<usize> {
    Ok(hom_space_basis(v, w)?.len())
}

/// Basis of Hom_A(V, W) as dim(W) x dim(V) matrices.
pub fn hom_space_basis(v: &ModuleRep, w: &ModuleRep) -> Result<Vec<Matrix>> {
    if v.algebra != w.algebra {
        return Err(Error::InvalidInput(
            "hom: modules over different algebras".into(),
        ));
    }
    let f = v.algebra.field();
    let n = v.algebra.dim();
    let rows_per = w.dim * v.dim;
    let mut sys = Matrix::zero(f, n * rows_per, rows_per);
    // unknowns t[r][c] flattened as r * v.dim + c; equations aw T - T av = 0
    for b in 0..n {
        let aw = &w.action[b];
        let av = &v.action[b];
        for r in 0..w.dim {
            for c in 0..v.dim {
                let row = b * rows_per + r * v.dim + c;
                for m in 0..w.dim {
                    let coeff = aw[(r, m)].clone();
                    if !coeff.is_zero() {
                        let col = m * v.dim + c;
                        sys[(row, col)] = &sys[(row, col)] + &coeff;
                    }
                }
                for m in 0..v.dim {
                    let coeff = av[(m, c)].clone();
                    if !coeff.is_zero() {
                        let col = r * v.dim + m;
                        sys[(row, col)] = &sys[(row, col)] - &coeff;
                    }
                }
            }
        }
    }
    let ker = sys.kernel();
    let mut out = Vec::new();
    for i in 0..ker.dim() {
        let flat = ker.basis_row(i);
        out.push(Matrix::from_fn(f, w.dim, v.dim, |r, c| {
            flat[r * v.dim + c].clone()
        }));
    }
    Ok(out)
}

/// Isomorphism test via an invertible intertwiner; complete for simple
/// modules over a splitting field.
pub fn is_isomorphic(v: &ModuleRep, w: &ModuleRep) -> Result<bool> {
    if v.dim != w.dim {
        return Ok(false);
    }
    let basis = hom_space_basis(v, w)?;
    if basis.is_empty() {
        return Ok(false);
    }
    if basis.iter().any(|t| t.rank() == v.dim) {
        return Ok(true);
    }
    let f = v.algebra.field();
    let mut rng = ChaCha12Rng::seed_from_u64(0x150);
    for _ in 0..200 {
        let mut t = Matrix::zero(f, w.dim, v.dim);
        for b in &basis {
            t = t.add(&b.scale(&f.random(&mut rng)));
        }
        if t.rank() == v.dim {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Does V decompose as a nontrivial direct sum?  Detected through nontrivial
/// idempotents in End_A(V).
pub fn splits_nontrivially(v: &ModuleRep) -> Result<bool> {
    let endo = hom_space_basis(v, v)?;
    let f = v.algebra.field();
    let qsize = f.order();
    let mut qm = 1u64;
    while qm < v.dim as u64 {
        qm = qm.saturating_mul(qsize);
    }
    let mut rng = ChaCha12Rng::seed_from_u64(0x511);
    let mut candidates: Vec<Matrix> = endo.clone();
    for _ in 0..200 {
        let mut t = Matrix::zero(f, v.dim, v.dim);
        for b in &endo {
            t = t.add(&b.scale(&f.random(&mut rng)));
        }
        candidates.push(t);
    }
    for cand in candidates {
        let mut u = cand.pow(qm);
        let mut iters = 0;
        loop {
            let u2 = u.mul(&u);
            if u2 == u {
                break;
            }
            u = u.pow(f.p());
            iters += 1;
            if iters > 200 {
                return Err(Error::Verification(
                    "endomorphism idempotent search stuck".into(),
                ));
            }
        }
        if !u.is_zero() && !u.is_identity() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Composition multiplicity [M : V] = dim Hom(P(V), M) = dim e_V M for a
/// split simple V with lifted primitive idempotent e_V.
pub fn composition_multiplicity(m: &ModuleRep, e_v: &Coords) -> usize {
    m.action_of(e_v).rank()
}

/// The simple module attached to a lifted primitive idempotent: top of A*e.
pub fn simple_module_for_idempotent(a: &Algebra, rad: &Subspace, e: &Coords) -> Result<ModuleRep> {
    let n = a.dim();
    let f = a.field();
    let mut rows = Vec::new();
    for i in 0..n {
        rows.push(a.mul_vec(&basis_vec(f, n, i), e));
    }
    let ae = Subspace::from_spanning(f, n, rows);
    let rad_ae = product_space(a, rad, &ae);
    let top_reps = complete_basis(&rad_ae, &ae);
    let d = top_reps.len();
    let mut span_rows: Vec<Coords> = top_reps.clone();
    for i in 0..rad_ae.dim() {
        span_rows.push(rad_ae.basis_row(i).to_vec());
    }
    let span_mat = Matrix::from_rows(f, span_rows).transpose();
    let mut action = Vec::with_capacity(n);
    for i in 0..n {
        let ei = basis_vec(f, n, i);
        let mut m = Matrix::zero(f, d, d);
        for (c, rep) in top_reps.iter().enumerate() {
            let img = a.mul_vec(&ei, rep);
            let sol = span_mat
                .solve(&img)
                .ok_or_else(|| Error::Verification("module action left its space".into()))?;
            for r in 0..d {
                m[(r, c)] = sol[r].clone();
            }
        }
        action.push(m);
    }
    let v = ModuleRep {
        algebra: a.clone(),
        dim: d,
        action,
    };
    v.verify()?;
    Ok(v)
}

/// Vectors of `big` completing `small` to a basis of `big`.
pub fn complete_basis(small: &Subspace, big: &Subspace) -> Vec<Coords> {
    let mut acc = small.clone();
    let mut out = Vec::new();
    for i in 0..big.dim() {
        let v = big.basis_row(i);
        if !acc.contains(v) {
            out.push(v.to_vec());
            let mut rows: Vec<Coords> = vec![v.to_vec()];
            for r in 0..acc.dim() {
                rows.push(acc.basis_row(r).to_vec());
            }
            acc = Subspace::from_spanning(small.field(), small.ambient(), rows);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Hensel solving in commutative algebras
// ---------------------------------------------------------------------------

pub struct HenselRoot {
    pub algebra: Algebra,
    pub ext_degree: usize,
    pub root: Coords,
}

/// Solve r^(p^n) - r = c exactly in a commutative algebra, extending the base
/// field minimally when the semisimple quotient requires it: solve in A/Nil
/// per etale factor, then Newton-lift (F'(X) = -1 makes the step r += F(r)).
pub fn hensel_solve(a: &Algebra, n_exp: usize, c: &Coords) -> Result<HenselRoot> {
    if !a.is_commutative() {
        return Err(Error::InvalidInput(
            "hensel_solve: algebra not commutative".into(),
        ));
    }
    let f = a.field();
    let p = f.p();
    let pn = (p as u128).pow(n_exp as u32) as u64;
    let nil = nilradical_commutative(a)?;
    let (c_alg, cmap) = quotient_algebra(a, &nil)?;
    let factors = split_etale(&c_alg)?;
    let mut need = 1usize;
    for (_, d) in &factors {
        need = lcm_usize(need, *d);
    }
    if need > 1 {
        let (_, emb) = extend_field(f, need)?;
        let ext = a.extend_scalars(&emb);
        let cx: Coords = c.iter().map(|e| emb.apply(e)).collect();
        let mut inner = hensel_solve(&ext, n_exp, &cx)?;
        inner.ext_degree *= need;
        return Ok(inner);
    }
    let cbar = cmap.project(c);
    let mut scalar_rhs = Vec::new();
    for (e, _) in &factors {
        let pos = e.iter().position(|x| !x.is_zero()).unwrap();
        let inv = e[pos].inv().unwrap();
        let ce = c_alg.mul_vec(&cbar, e);
        scalar_rhs.push(&ce[pos] * &inv);
    }
    let mut ext_needed = 1usize;
    let mut roots_scalar = Vec::new();
    for rhs in &scalar_rhs {
        let (root, d) = crate::field::solve_additive(f, n_exp, rhs)?;
        ext_needed = lcm_usize(ext_needed, d);
        roots_scalar.push(root);
    }
    if ext_needed > 1 {
        let (_, emb) = extend_field(f, ext_needed)?;
        let ext = a.extend_scalars(&emb);
        let cx: Coords = c.iter().map(|e| emb.apply(e)).collect();
        let mut inner = hensel_solve(&ext, n_exp, &cx)?;
        inner.ext_degree *= ext_needed;
        return Ok(inner);
    }
    let newton = |start: &Coords| -> Result<Coords> {
        let mut r = start.clone();
        for _ in 0..(a.dim() + 2) {
            let mut fr = a.pow_vec(&r, pn);
            for (i, (ri, ci)) in r.iter().zip(c.iter()).enumerate() {
                fr[i] = &(&fr[i] - ri) - ci;
            }
            if fr.iter().all(|x| x.is_zero()) {
                return Ok(r);
            }
            for (ri, fi) in r.iter_mut().zip(fr.iter()) {
                *ri = &*ri + fi;
            }
        }
        Err(Error::Verification("hensel lift did not converge".into()))
    };
    let mut r0 = zero_vec(f, a.dim());
    for ((e, _), s) in factors.iter().zip(roots_scalar.iter()) {
        let mut term = cmap.lift_vec(e);
        for t in term.iter_mut() {
            *t = &*t * s;
        }
        for (i, t) in term.iter().enumerate() {
            r0[i] = &r0[i] + t;
        }
    }
    let root = newton(&r0)?;
    // uniqueness of the root with this residue: a perturbed start in the
    // nilradical must converge to the same root (F' = -1 is a unit)
    if nil.dim() > 0 {
        let mut alt = r0.clone();
        for (i, b) in nil.basis_row(0).iter().enumerate() {
            alt[i] = &alt[i] + b;
        }
        let root2 = newton(&alt)?;
        if root2 != root {
            return Err(Error::Verification(
                "hensel root not unique for its residue".into(),
            ));
        }
    }
    Ok(HenselRoot {
        algebra: a.clone(),
        ext_degree: 1,
        root,
    })
}

// ---------------------------------------------------------------------------
// small constructions shared across modules and tests
// ---------------------------------------------------------------------------

/// k[t]/(t^m)
pub fn truncated_polynomial_algebra(field: &Field, m: usize) -> Algebra {
    Algebra::from_mult_fn(field, m, basis_vec(field, m, 0), |i, j| {
        if i + j < m {
            basis_vec(field, m, i + j)
        } else {
            zero_vec(field, m)
        }
    })
}

/// k[x]/(x^(p^n) - x), the split etale model with basis 1, x, .., x^(p^n - 1).
pub fn additive_algebra(field: &Field, n: usize) -> Algebra {
    let pn = (field.p() as u128).pow(n as u32) as usize;
    Algebra::from_mult_fn(field, pn, basis_vec(field, pn, 0), |i, j| {
        let mut e = i + j;
        if e >= pn {
            e = e - pn + 1;
        }
        basis_vec(field, pn, e)
    })
}

/// Full matrix algebra M_m over the field, basis E_(r,c) flattened row-major.
pub fn matrix_algebra(field: &Field, m: usize) -> Algebra {
    let dim = m * m;
    let mut unit = zero_vec(field, dim);
    for i in 0..m {
        unit[i * m + i] = field.one();
    }
    Algebra::from_mult_fn(field, dim, unit, |a, b| {
        let (r1, c1) = (a / m, a % m);
        let (r2, c2) = (b / m, b % m);
        if c1 == r2 {
            basis_vec(field, dim, r1 * m + c2)
        } else {
            zero_vec(field, dim)
        }
    })
}

#[cfg(test)]
pub mod test_oracles {
    use super::*;

    /// Exhaustive oracle: largest nilpotent two-sided ideal, by enumerating
    /// all subspaces. Only usable when p^dim is small.
    pub fn brute_force_largest_nilpotent_ideal(a: &Algebra) -> Subspace {
        let f = a.field();
        let n = a.dim();
        let p = f.p();
        let total = (p as u128).pow(n as u32) as u64;
        let vecs: Vec<Coords> = (1..total)
            .map(|ix| {
                let mut v = zero_vec(f, n);
                let mut m = ix;
                for item in v.iter_mut() {
                    *item = f.from_u64(m % p);
                    m /= p;
                }
                v
            })
            .collect();
        let mut best = Subspace::zero(f, n);
        let mut seen = std::collections::HashSet::new();
        let mut stack: Vec<Subspace> = vec![Subspace::zero(f, n)];
        while let Some(s) = stack.pop() {
            let key: Vec<u64> = (0..s.dim())
                .flat_map(|i| s.basis_row(i).iter().map(|e| e.index()))
                .collect();
            if !seen.insert((s.dim(), key)) {
                continue;
            }
            if s.dim() > best.dim()
                && is_two_sided_ideal(a, &s)
                && nilpotency_index(a, &s).is_some()
            {
                best = s.clone();
            }
            for v in &vecs {
                if !s.contains(v) {
                    let mut rows: Vec<Coords> = vec![v.clone()];
                    for r in 0..s.dim() {
                        rows.push(s.basis_row(r).to_vec());
                    }
                    stack.push(Subspace::from_spanning(f, n, rows));
                }
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn truncated_algebra_radical() {
        let f5 = make_field(5, 1).unwrap();
        let a = truncated_polynomial_algebra(&f5, 5);
        a.verify().unwrap();
        let r = radical(&a).unwrap();
        assert_eq!(r.dim(), 4); // span{t..t^4}
        for i in 1..5 {
            assert!(r.contains(&basis_vec(&f5, 5, i)));
        }
    }

    #[test]
    fn split_etale_algebra_radical_zero() {
        let f5 = make_field(5, 1).unwrap();
        let a = additive_algebra(&f5, 1);
        a.verify().unwrap();
        assert_eq!(radical(&a).unwrap().dim(), 0);
    }

    #[test]
    fn group_algebra_c5_radical() {
        let f5 = make_field(5, 1).unwrap();
        let a = Algebra::from_mult_fn(&f5, 5, basis_vec(&f5, 5, 0), |i, j| {
            basis_vec(&f5, 5, (i + j) % 5)
        });
        let r = radical(&a).unwrap();
        assert_eq!(r.dim(), 4);
    }

    #[test]
    fn matrix_algebra_is_semisimple_with_one_block() {
        let f2 = make_field(2, 1).unwrap();
        let a = matrix_algebra(&f2, 2);
        a.verify().unwrap();
        assert_eq!(radical(&a).unwrap().dim(), 0);
        let bs = block_structure(&a).unwrap();
        assert_eq!(bs.blocks.len(), 1);
        assert_eq!(bs.blocks[0].matrix_size, 2);
        assert_eq!(bs.blocks[0].residue_degree, 1);
        assert_eq!(characters(&a).unwrap().chars.len(), 0);
        let dec = decompose_regular(&a).unwrap();
        assert_eq!(dec.entries, vec![(2, 2, 2)]);
    }

    #[test]
    fn upper_triangular_radical_catches_offdiagonal() {
        // span{E11, E22, E12} in M_2: the radical is E12 even though the
        // plain trace form cannot see it at p = 2
        let f2 = make_field(2, 1).unwrap();
        let m2 = matrix_algebra(&f2, 2);
        let rows = vec![
            basis_vec(&f2, 4, 0),
            basis_vec(&f2, 4, 3),
            basis_vec(&f2, 4, 1),
        ];
        let sub = Subspace::from_spanning(&f2, 4, rows);
        let (a, _) = m2.subalgebra(&sub).unwrap();
        a.verify().unwrap();
        assert_eq!(radical(&a).unwrap().dim(), 1);
    }

    #[test]
    fn characters_of_split_etale() {
        let f3 = make_field(3, 1).unwrap();
        let a = additive_algebra(&f3, 1);
        let cs = characters(&a).unwrap();
        assert_eq!(cs.ext_degree, 1);
        assert_eq!(cs.chars.len(), 3);
        let mut values: Vec<u64> = cs.chars.iter().map(|c| c[1].index()).collect();
        values.sort();
        assert_eq!(values, vec![0, 1, 2]); // x -> 0, 1, 2
    }

    #[test]
    fn characters_needing_extension() {
        // F_2[x]/(x^2 + x + 1) is a field: 2 characters over F_4, none rational
        let f2 = make_field(2, 1).unwrap();
        let a = Algebra::from_mult_fn(&f2, 2, basis_vec(&f2, 2, 0), |i, j| match (i, j) {
            (0, 0) => basis_vec(&f2, 2, 0),
            (0, 1) | (1, 0) => basis_vec(&f2, 2, 1),
            (1, 1) => vec![f2.one(), f2.one()],
            _ => unreachable!(),
        });
        a.verify().unwrap();
        let cs = characters(&a).unwrap();
        assert_eq!(cs.ext_degree, 2);
        assert_eq!(cs.chars.len(), 2);
    }

    #[test]
    fn idempotents_of_split_etale() {
        let f3 = make_field(3, 1).unwrap();
        let a = additive_algebra(&f3, 1);
        let idems = lift_idempotents(&a).unwrap();
        assert_eq!(idems.len(), 3);
        for e in &idems {
            assert_eq!(a.mul_vec(e, e), *e);
        }
    }

    #[test]
    fn idempotents_of_local_algebra() {
        let f3 = make_field(3, 1).unwrap();
        let a = truncated_polynomial_algebra(&f3, 3);
        let idems = lift_idempotents(&a).unwrap();
        assert_eq!(idems.len(), 1);
        assert_eq!(idems[0], *a.unit());
    }

    #[test]
    fn regular_decomposition_of_local() {
        let f5 = make_field(5, 1).unwrap();
        let a = truncated_polynomial_algebra(&f5, 5);
        let dec = decompose_regular(&a).unwrap();
        assert_eq!(dec.entries, vec![(1, 5, 1)]);
    }

    #[test]
    fn hensel_examples() {
        // A = F_2[t]/(t^2), c = t: r = t solves r^2 - r = t in char 2
        let f2 = make_field(2, 1).unwrap();
        let a = truncated_polynomial_algebra(&f2, 2);
        let c = basis_vec(&f2, 2, 1);
        let h = hensel_solve(&a, 1, &c).unwrap();
        assert_eq!(h.ext_degree, 1);
        // oracle: check all 4 elements of A
        let mut sols = Vec::new();
        for a0 in 0..2u64 {
            for a1 in 0..2u64 {
                let r = vec![f2.from_u64(a0), f2.from_u64(a1)];
                let mut fr = a.pow_vec(&r, 2);
                for (i, (ri, ci)) in r.iter().zip(c.iter()).enumerate() {
                    fr[i] = &(&fr[i] - ri) - ci;
                }
                if fr.iter().all(|x| x.is_zero()) {
                    sols.push(r);
                }
            }
        }
        assert!(sols.contains(&h.root));
        assert!(sols.contains(&basis_vec(&f2, 2, 1)));

        let f5 = make_field(5, 1).unwrap();
        let a5 = truncated_polynomial_algebra(&f5, 1);
        let h = hensel_solve(&a5, 1, &zero_vec(&f5, 1)).unwrap();
        assert!(h.root[0].is_zero());

        // A = F_2, c = 1 -> needs F_4
        let a2 = truncated_polynomial_algebra(&f2, 1);
        let h = hensel_solve(&a2, 1, &vec![f2.one()]).unwrap();
        assert_eq!(h.ext_degree, 2);
        let fr = &h.root[0].pow(2) - &h.root[0];
        assert!(fr.is_one());
    }

    #[test]
    fn hom_spaces() {
        let f2 = make_field(2, 1).unwrap();
        let a = additive_algebra(&f2, 1);
        let cs = characters(&a).unwrap();
        let v = ModuleRep::one_dimensional(&a, &cs.chars[0]);
        let w = ModuleRep::one_dimensional(&a, &cs.chars[1]);
        v.verify().unwrap();
        assert_eq!(hom_space_dim(&v, &v).unwrap(), 1);
        assert_eq!(hom_space_dim(&v, &w).unwrap(), 0);
        assert!(is_isomorphic(&v, &v).unwrap());
        assert!(!is_isomorphic(&v, &w).unwrap());
    }

    #[test]
    fn brute_force_radical_agreement_small() {
        let f2 = make_field(2, 1).unwrap();
        let m2 = matrix_algebra(&f2, 2);
        let rows = vec![
            basis_vec(&f2, 4, 0),
            basis_vec(&f2, 4, 3),
            basis_vec(&f2, 4, 1),
        ];
        let sub = Subspace::from_spanning(&f2, 4, rows);
        let (a, _) = m2.subalgebra(&sub).unwrap();
        let brute = test_oracles::brute_force_largest_nilpotent_ideal(&a);
        let r = radical(&a).unwrap();
        assert_eq!(r.dim(), brute.dim());
        assert!(brute.contains_subspace(&r));
    }
}
