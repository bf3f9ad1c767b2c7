//! Hopf algebras as structure constants: axioms, duals, tensor products,
//! group-likes, skew-primitives, coradical filtration, integrals, predicates,
//! winding automorphisms, convolution, exact sequences, morphisms, and the
//! Ext^1 dimension identities.

use crate::algebra::{
    self, axpy, basis_vec, block_structure, characters, decompose_regular, product_space,
    quotient_algebra, radical, simple_module_for_idempotent, sparsify, zero_vec, Algebra,
    CharacterSet, Coords, ModuleRep, SparseVec,
};
use crate::field::{extend_field, Embedding, Field, FieldElement};
use crate::linalg::{Matrix, Subspace};
use crate::{Error, Result};
use std::sync::Arc;

#[derive(Debug)]
struct HopfData {
    alg: Algebra,
    /// comult[i] = Delta(e_i) as a sparse vector over the tensor-square basis
    /// indexed j * dim + k.
    comult: Vec<SparseVec>,
    counit: Coords,
    antipode: Matrix,
}

/// A finite-dimensional Hopf algebra over a finite field. Cheap to clone.
#[derive(Clone)]
pub struct HopfAlgebra(Arc<HopfData>);

impl std::fmt::Debug for HopfAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HopfAlgebra(dim {} over {:?})", self.dim(), self.field())
    }
}

impl HopfAlgebra {
    pub fn new(alg: Algebra, comult: Vec<SparseVec>, counit: Coords, antipode: Matrix) -> Self {
        assert_eq!(comult.len(), alg.dim());
        assert_eq!(counit.len(), alg.dim());
        HopfAlgebra(Arc::new(HopfData {
            alg,
            comult,
            counit,
            antipode,
        }))
    }

    pub fn algebra(&self) -> &Algebra {
        &self.0.alg
    }
    pub fn field(&self) -> &Field {
        self.0.alg.field()
    }
    pub fn dim(&self) -> usize {
        self.0.alg.dim()
    }
    pub fn comult_basis(&self, i: usize) -> &SparseVec {
        &self.0.comult[i]
    }
    pub fn counit(&self) -> &Coords {
        &self.0.counit
    }
    pub fn antipode(&self) -> &Matrix {
        &self.0.antipode
    }
    pub fn unit(&self) -> &Coords {
        self.0.alg.unit()
    }

    pub fn counit_of(&self, v: &[FieldElement]) -> FieldElement {
        let mut acc = self.field().zero();
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                acc = &acc + &(x * &self.0.counit[i]);
            }
        }
        acc
    }

    /// Delta(v) as a dense vector over the tensor-square basis.
    pub fn comult_vec(&self, v: &[FieldElement]) -> Coords {
        let n = self.dim();
        let mut out = zero_vec(self.field(), n * n);
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (t, c) in self.comult_basis(i) {
                out[*t] = &out[*t] + &(x * c);
            }
        }
        out
    }

    pub fn antipode_of(&self, v: &[FieldElement]) -> Coords {
        self.0.antipode.apply(v)
    }

    /// Product of two tensors in H (x) H, given sparsely; dense result.
    pub fn tensor_square_mul(&self, u: &SparseVec, v: &SparseVec) -> Coords {
        let n = self.dim();
        let alg = self.algebra();
        let mut out = zero_vec(self.field(), n * n);
        for (t1, c1) in u {
            let (a1, b1) = (t1 / n, t1 % n);
            for (t2, c2) in v {
                let (a2, b2) = (t2 / n, t2 % n);
                let coeff = c1 * c2;
                for (ka, ca) in alg.mul_basis(a1, a2) {
                    let cc = &coeff * ca;
                    for (kb, cb) in alg.mul_basis(b1, b2) {
                        let idx = ka * n + kb;
                        out[idx] = &out[idx] + &(&cc * cb);
                    }
                }
            }
        }
        out
    }

    pub fn extend_scalars(&self, emb: &Embedding) -> HopfAlgebra {
        let alg = self.0.alg.extend_scalars(emb);
        let comult = self
            .0
            .comult
            .iter()
            .map(|s| s.iter().map(|(t, c)| (*t, emb.apply(c))).collect())
            .collect();
        let counit = self.0.counit.iter().map(|c| emb.apply(c)).collect();
        let antipode = Matrix::from_fn(&emb.target, self.dim(), self.dim(), |r, c| {
            emb.apply(&self.0.antipode[(r, c)])
        });
        HopfAlgebra::new(alg, comult, counit, antipode)
    }

    /// The dual Hopf algebra on the dual basis; an exact involution on
    /// structure constants.
    pub fn dual(&self) -> HopfAlgebra {
        let n = self.dim();
        let f = self.field();
        // mult of the dual = transpose of comult
        let mut mult = vec![SparseVec::new(); n * n];
        for k in 0..n {
            for (t, c) in self.comult_basis(k) {
                let (i, j) = (t / n, t % n);
                mult[i * n + j].push((k, c.clone()));
            }
        }
        // comult of the dual = transpose of mult
        let mut comult = vec![SparseVec::new(); n];
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.algebra().mul_basis(i, j) {
                    comult[*k].push((i * n + j, c.clone()));
                }
            }
        }
        let unit = self.0.counit.clone();
        let counit = self.unit().clone();
        let alg = Algebra::new(f.clone(), n, mult, unit);
        HopfAlgebra::new(alg, comult, counit, self.0.antipode.transpose())
    }

    /// Componentwise Hopf structure on the tensor product.
    pub fn tensor_product(&self, other: &HopfAlgebra) -> Result<HopfAlgebra> {
        if self.field() != other.field() {
            return Err(Error::InvalidInput("tensor product: field mismatch".into()));
        }
        let (n1, n2) = (self.dim(), other.dim());
        let n = n1 * n2;
        let f = self.field();
        let idx = |a: usize, b: usize| a * n2 + b;
        let mut mult = vec![SparseVec::new(); n * n];
        for i1 in 0..n1 {
            for i2 in 0..n2 {
                for j1 in 0..n1 {
                    for j2 in 0..n2 {
                        let mut entry = SparseVec::new();
                        for (k1, c1) in self.algebra().mul_basis(i1, j1) {
                            for (k2, c2) in other.algebra().mul_basis(i2, j2) {
                                entry.push((idx(*k1, *k2), c1 * c2));
                            }
                        }
                        mult[idx(i1, i2) * n + idx(j1, j2)] = entry;
                    }
                }
            }
        }
        let mut unit = zero_vec(f, n);
        for (a, x) in self.unit().iter().enumerate() {
            for (b, y) in other.unit().iter().enumerate() {
                unit[idx(a, b)] = &unit[idx(a, b)] + &(x * y);
            }
        }
        let alg = Algebra::new(f.clone(), n, mult, unit);
        let mut comult = vec![SparseVec::new(); n];
        for i1 in 0..n1 {
            for i2 in 0..n2 {
                let mut entry = SparseVec::new();
                for (t1, c1) in self.comult_basis(i1) {
                    let (j1, l1) = (t1 / n1, t1 % n1);
                    for (t2, c2) in other.comult_basis(i2) {
                        let (j2, l2) = (t2 / n2, t2 % n2);
                        entry.push((idx(j1, j2) * n + idx(l1, l2), c1 * c2));
                    }
                }
                comult[idx(i1, i2)] = entry;
            }
        }
        let mut counit = zero_vec(f, n);
        for a in 0..n1 {
            for b in 0..n2 {
                counit[idx(a, b)] = &self.0.counit[a] * &other.0.counit[b];
            }
        }
        let mut antipode = Matrix::zero(f, n, n);
        for a in 0..n1 {
            for b in 0..n2 {
                for r in 0..n1 {
                    for s in 0..n2 {
                        let v = &self.0.antipode[(r, a)] * &other.0.antipode[(s, b)];
                        if !v.is_zero() {
                            antipode[(idx(r, s), idx(a, b))] = v;
                        }
                    }
                }
            }
        }
        Ok(HopfAlgebra::new(alg, comult, counit, antipode))
    }
}

// ---------------------------------------------------------------------------
// axioms
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub associativity: bool,
    pub unit: bool,
    pub coassociativity: bool,
    pub counit_law: bool,
    pub bialgebra: bool,
    pub antipode: bool,
    pub witness: Option<String>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.associativity
            && self.unit
            && self.coassociativity
            && self.counit_law
            && self.bialgebra
            && self.antipode
    }
}

pub fn verify_hopf_axioms(h: &HopfAlgebra) -> AxiomReport {
    let n = h.dim();
    let f = h.field();
    let alg = h.algebra();
    let mut report = AxiomReport {
        associativity: true,
        unit: true,
        coassociativity: true,
        counit_law: true,
        bialgebra: true,
        antipode: true,
        witness: None,
    };
    let mut note = |slot: &mut bool, w: String, witness: &mut Option<String>| {
        *slot = false;
        if witness.is_none() {
            *witness = Some(w);
        }
    };
    match alg.verify() {
        Ok(()) => {}
        Err(e) => {
            let msg = format!("{e}");
            if msg.contains("unit") {
                note(&mut report.unit, msg, &mut report.witness);
            } else {
                note(&mut report.associativity, msg, &mut report.witness);
            }
        }
    }
    // coassociativity on basis elements
    for i in 0..n {
        let mut left = std::collections::HashMap::new();
        let mut right = std::collections::HashMap::new();
        for (t, c) in h.comult_basis(i) {
            let (j, k) = (t / n, t % n);
            for (t2, c2) in h.comult_basis(j) {
                let (a, b) = (t2 / n, t2 % n);
                let e = left.entry((a, b, k)).or_insert_with(|| f.zero());
                *e = &*e + &(c * c2);
            }
            for (t2, c2) in h.comult_basis(k) {
                let (a, b) = (t2 / n, t2 % n);
                let e = right.entry((j, a, b)).or_insert_with(|| f.zero());
                *e = &*e + &(c * c2);
            }
        }
        let keys: std::collections::HashSet<_> = left.keys().chain(right.keys()).cloned().collect();
        for key in keys {
            let lv = left.get(&key).cloned().unwrap_or_else(|| f.zero());
            let rv = right.get(&key).cloned().unwrap_or_else(|| f.zero());
            if lv != rv {
                note(
                    &mut report.coassociativity,
                    format!("coassociativity fails at basis {i}"),
                    &mut report.witness,
                );
            }
        }
    }
    // counit law
    for i in 0..n {
        let mut left = zero_vec(f, n);
        let mut right = zero_vec(f, n);
        for (t, c) in h.comult_basis(i) {
            let (j, k) = (t / n, t % n);
            left[k] = &left[k] + &(c * &h.0.counit[j]);
            right[j] = &right[j] + &(c * &h.0.counit[k]);
        }
        let ei = basis_vec(f, n, i);
        if left != ei || right != ei {
            note(
                &mut report.counit_law,
                format!("counit law fails at basis {i}"),
                &mut report.witness,
            );
        }
    }
    // bialgebra: Delta and epsilon are algebra maps
    let unit_tensor = {
        let mut v = zero_vec(f, n * n);
        for (a, x) in h.unit().iter().enumerate() {
            for (b, y) in h.unit().iter().enumerate() {
                v[a * n + b] = &v[a * n + b] + &(x * y);
            }
        }
        v
    };
    if h.comult_vec(h.unit()) != unit_tensor || !h.counit_of(h.unit()).is_one() {
        note(
            &mut report.bialgebra,
            "Delta(1) != 1 (x) 1 or eps(1) != 1".into(),
            &mut report.witness,
        );
    }
    for i in 0..n {
        for j in 0..n {
            let prod = algebra::densify(f, n, alg.mul_basis(i, j));
            let lhs = h.comult_vec(&prod);
            let rhs = h.tensor_square_mul(h.comult_basis(i), h.comult_basis(j));
            if lhs != rhs {
                note(
                    &mut report.bialgebra,
                    format!("Delta not multiplicative at ({i},{j})"),
                    &mut report.witness,
                );
            }
            let eps_prod = h.counit_of(&prod);
            if eps_prod != &h.0.counit[i] * &h.0.counit[j] {
                note(
                    &mut report.bialgebra,
                    format!("eps not multiplicative at ({i},{j})"),
                    &mut report.witness,
                );
            }
        }
    }
    // antipode axiom
    for i in 0..n {
        let mut left = zero_vec(f, n);
        let mut right = zero_vec(f, n);
        for (t, c) in h.comult_basis(i) {
            let (j, k) = (t / n, t % n);
            let sj: Coords = (0..n).map(|r| h.0.antipode[(r, j)].clone()).collect();
            let sk: Coords = (0..n).map(|r| h.0.antipode[(r, k)].clone()).collect();
            let l = alg.mul_vec(&sj, &basis_vec(f, n, k));
            axpy(&mut left, c, &l);
            let r = alg.mul_vec(&basis_vec(f, n, j), &sk);
            axpy(&mut right, c, &r);
        }
        let mut expect = h.unit().clone();
        for x in expect.iter_mut() {
            *x = &*x * &h.0.counit[i];
        }
        if left != expect || right != expect {
            note(
                &mut report.antipode,
                format!("antipode axiom fails at basis {i}"),
                &mut report.witness,
            );
        }
    }
    report
}

// ---------------------------------------------------------------------------
// group-likes, primitives, coradical
// ---------------------------------------------------------------------------

/// The algebra on the dual space whose multiplication is the transposed
/// comultiplication (the "coalgebra dual").
pub fn coalgebra_dual_algebra(h: &HopfAlgebra) -> Algebra {
    let n = h.dim();
    let mut mult = vec![SparseVec::new(); n * n];
    for k in 0..n {
        for (t, c) in h.comult_basis(k) {
            let (i, j) = (t / n, t % n);
            mult[i * n + j].push((k, c.clone()));
        }
    }
    Algebra::new(h.field().clone(), n, mult, h.0.counit.clone())
}

pub struct GroupLikes {
    /// Hopf algebra over the splitting field
    pub hopf: HopfAlgebra,
    pub ext_degree: usize,
    /// group-like elements, coordinates over the extended field
    pub elements: Vec<Coords>,
}

/// G(H), computed as algebra characters of the coalgebra dual, pulled back to
/// elements of H and verified to satisfy Delta(g) = g (x) g, eps(g) = 1.
pub fn grouplikes(h: &HopfAlgebra) -> Result<GroupLikes> {
    let b = coalgebra_dual_algebra(h);
    let cs: CharacterSet = characters(&b)?;
    let (hopf, _emb) = if cs.ext_degree > 1 {
        let (_, emb) = extend_field(h.field(), cs.ext_degree)?;
        (h.extend_scalars(&emb), Some(emb))
    } else {
        (h.clone(), None)
    };
    let n = h.dim();
    let f = hopf.field();
    let mut elements = Vec::new();
    for chi in &cs.chars {
        let g: Coords = chi.to_vec();
        // verify group-like
        let dg = hopf.comult_vec(&g);
        let mut gg = zero_vec(f, n * n);
        for (a, x) in g.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (bb, y) in g.iter().enumerate() {
                if !y.is_zero() {
                    gg[a * n + bb] = &gg[a * n + bb] + &(x * y);
                }
            }
        }
        if dg != gg || !hopf.counit_of(&g).is_one() {
            return Err(Error::Verification("group-like candidate failed Delta(g) = g(x)g".into()));
        }
        elements.push(g);
    }
    // closure under multiplication and antipode
    let alg = hopf.algebra();
    for g1 in &elements {
        let sg = hopf.antipode_of(g1);
        if !elements.contains(&sg) {
            return Err(Error::Verification("group-likes not closed under antipode".into()));
        }
        for g2 in &elements {
            let prod = alg.mul_vec(g1, g2);
            if !elements.contains(&prod) {
                return Err(Error::Verification("group-likes not closed under product".into()));
            }
        }
    }
    Ok(GroupLikes {
        hopf,
        ext_degree: cs.ext_degree,
        elements,
    })
}

/// Solution space of Delta(x) = x (x) g + h (x) x.
pub fn skew_primitives(hopf: &HopfAlgebra, g: &Coords, hh: &Coords) -> Result<Subspace> {
    let n = hopf.dim();
    let f = hopf.field();
    // verify g, hh are group-like
    for cand in [g, hh] {
        let d = hopf.comult_vec(cand);
        let mut sq = zero_vec(f, n * n);
        for (a, x) in cand.iter().enumerate() {
            for (b, y) in cand.iter().enumerate() {
                if !x.is_zero() && !y.is_zero() {
                    sq[a * n + b] = &sq[a * n + b] + &(x * y);
                }
            }
        }
        if d != sq || !hopf.counit_of(cand).is_one() {
            return Err(Error::InvalidInput("skew_primitives: not a group-like".into()));
        }
    }
    // rows indexed by tensor pairs, columns by x-coordinates
    let mut sys = Matrix::zero(f, n * n, n);
    for i in 0..n {
        for (t, c) in hopf.comult_basis(i) {
            sys[(*t, i)] = &sys[(*t, i)] + c;
        }
        // minus x_i e_i (x) g
        for (b, y) in g.iter().enumerate() {
            if !y.is_zero() {
                let t = i * n + b;
                sys[(t, i)] = &sys[(t, i)] - y;
            }
        }
        // minus h (x) x_i e_i
        for (a, y) in hh.iter().enumerate() {
            if !y.is_zero() {
                let t = a * n + i;
                sys[(t, i)] = &sys[(t, i)] - y;
            }
        }
    }
    Ok(sys.kernel())
}

/// P(H) = P_{1,1}(H).
pub fn primitives(h: &HopfAlgebra) -> Result<Subspace> {
    skew_primitives(h, h.unit(), h.unit())
}

/// Vector-space quotient projection onto the complement coordinates of `sub`.
fn vs_quotient_proj(sub: &Subspace) -> Matrix {
    let n = sub.ambient();
    let f = sub.field();
    let compl = sub.complement_coords();
    let mut proj = Matrix::zero(f, compl.len(), n);
    for c in 0..n {
        let reduced = sub.reduce(&basis_vec(f, n, c));
        for (r, &cc) in compl.iter().enumerate() {
            proj[(r, c)] = reduced[cc].clone();
        }
    }
    proj
}

/// Coradical filtration H_0 <= H_1 <= ... <= H; H_0 is the annihilator of the
/// radical of the coalgebra dual, H_n = Delta^{-1}(H (x) H_{n-1} + H_0 (x) H).
pub fn coradical_filtration(h: &HopfAlgebra) -> Result<Vec<Subspace>> {
    let n = h.dim();
    let f = h.field();
    let b = coalgebra_dual_algebra(h);
    let jac = radical(&b)?;
    // H_0 = annihilator of Jac under the dual pairing
    let h0 = if jac.dim() == 0 {
        Subspace::full(f, n)
    } else {
        let m = Matrix::from_fn(f, jac.dim(), n, |r, c| jac.basis_row(r)[c].clone());
        m.kernel()
    };
    let mut filtration = vec![h0.clone()];
    let proj0 = vs_quotient_proj(&h0);
    loop {
        let prev = filtration.last().unwrap();
        if prev.dim() == n {
            break;
        }
        let projp = vs_quotient_proj(prev);
        // kernel of (proj0 (x) projp) o Delta
        let r0 = proj0.rows();
        let rp = projp.rows();
        let mut sys = Matrix::zero(f, r0 * rp, n);
        for i in 0..n {
            for (t, c) in h.comult_basis(i) {
                let (a, bq) = (t / n, t % n);
                for r in 0..r0 {
                    let pa = &proj0[(r, a)];
                    if pa.is_zero() {
                        continue;
                    }
                    for s in 0..rp {
                        let pb = &projp[(s, bq)];
                        if !pb.is_zero() {
                            let row = r * rp + s;
                            sys[(row, i)] = &sys[(row, i)] + &(&(c * pa) * pb);
                        }
                    }
                }
            }
        }
        let next = sys.kernel();
        if next.dim() <= prev.dim() {
            return Err(Error::Verification(
                "coradical filtration failed to grow before reaching H".into(),
            ));
        }
        filtration.push(next);
    }
    Ok(filtration)
}

// ---------------------------------------------------------------------------
// integrals and predicates
// ---------------------------------------------------------------------------

pub struct Integrals {
    pub left: Subspace,
    pub right: Subspace,
}

pub fn integrals(h: &HopfAlgebra) -> Result<Integrals> {
    let n = h.dim();
    let f = h.field();
    let alg = h.algebra();
    let mut lsys = Matrix::zero(f, n * n, n);
    let mut rsys = Matrix::zero(f, n * n, n);
    for i in 0..n {
        let ei = basis_vec(f, n, i);
        let li = alg.lmul_matrix(&ei);
        let ri = alg.rmul_matrix(&ei);
        for r in 0..n {
            for c in 0..n {
                let mut lv = li[(r, c)].clone();
                let mut rv = ri[(r, c)].clone();
                if r == c {
                    lv = &lv - &h.0.counit[i];
                    rv = &rv - &h.0.counit[i];
                }
                lsys[(i * n + r, c)] = lv;
                rsys[(i * n + r, c)] = rv;
            }
        }
    }
    let left = lsys.kernel();
    let right = rsys.kernel();
    if left.dim() != 1 || right.dim() != 1 {
        return Err(Error::Verification(format!(
            "integral spaces have dims ({}, {}), expected (1, 1)",
            left.dim(),
            right.dim()
        )));
    }
    Ok(Integrals { left, right })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Predicates {
    pub pointed: bool,
    pub connected: bool,
    pub basic: bool,
    pub local: bool,
    pub commutative: bool,
    pub cocommutative: bool,
    pub semisimple: bool,
    pub cosemisimple: bool,
    pub unimodular: bool,
    pub counimodular: bool,
}

pub fn is_cocommutative(h: &HopfAlgebra) -> bool {
    let n = h.dim();
    for i in 0..n {
        let mut swapped: Vec<(usize, FieldElement)> = h
            .comult_basis(i)
            .iter()
            .map(|(t, c)| ((t % n) * n + t / n, c.clone()))
            .collect();
        swapped.sort_by_key(|(t, _)| *t);
        let mut orig = h.comult_basis(i).clone();
        orig.sort_by_key(|(t, _)| *t);
        if swapped != orig {
            return false;
        }
    }
    true
}

pub fn is_semisimple(h: &HopfAlgebra) -> Result<bool> {
    let ints = integrals(h)?;
    Ok(!h.counit_of(ints.left.basis_row(0)).is_zero())
}

pub fn is_local(h: &HopfAlgebra) -> bool {
    let n = h.dim();
    let f = h.field();
    let ker_eps = Matrix::from_fn(f, 1, n, |_, c| h.0.counit[c].clone()).kernel();
    algebra::nilpotency_index(h.algebra(), &ker_eps).is_some()
}

pub fn predicates(h: &HopfAlgebra) -> Result<Predicates> {
    let dual = h.dual();
    let gl = grouplikes(h)?;
    let corad = coradical_filtration(h)?;
    let h0 = corad[0].dim();
    let gl_dual = grouplikes(&dual)?;
    let corad_dual = coradical_filtration(&dual)?;
    let ints = integrals(h)?;
    let ints_dual = integrals(&dual)?;
    Ok(Predicates {
        pointed: h0 == gl.elements.len(),
        connected: h0 == 1,
        basic: corad_dual[0].dim() == gl_dual.elements.len(),
        local: is_local(h),
        commutative: h.algebra().is_commutative(),
        cocommutative: is_cocommutative(h),
        semisimple: !h.counit_of(ints.left.basis_row(0)).is_zero(),
        cosemisimple: !dual.counit_of(ints_dual.left.basis_row(0)).is_zero(),
        unimodular: ints.left == ints.right,
        counimodular: ints_dual.left == ints_dual.right,
    })
}

/// Least m >= 1 with S^m = id; asserts the bound m <= 4 dim^2.
pub fn antipode_order(h: &HopfAlgebra) -> Result<usize> {
    let s = h.antipode();
    let mut acc = s.clone();
    let bound = 4 * h.dim() * h.dim();
    for m in 1..=bound {
        if acc.is_identity() {
            return Ok(m);
        }
        acc = acc.mul(s);
    }
    Err(Error::Verification(format!(
        "antipode order exceeds bound {bound}"
    )))
}

// ---------------------------------------------------------------------------
// convolution
// ---------------------------------------------------------------------------

/// Convolution (f * g)(c) = sum f(c_1) g(c_2) of linear maps C -> A, stored
/// as (dim A) x (dim C) matrices; C is the coalgebra underlying `ch`.
pub fn convolution(ch: &HopfAlgebra, a: &Algebra, f: &Matrix, g: &Matrix) -> Matrix {
    let nc = ch.dim();
    let na = a.dim();
    let fld = a.field();
    let mut out = Matrix::zero(fld, na, nc);
    for c in 0..nc {
        let mut acc = zero_vec(fld, na);
        for (t, coef) in ch.comult_basis(c) {
            let (i, j) = (t / nc, t % nc);
            let fi: Coords = (0..na).map(|r| f[(r, i)].clone()).collect();
            let gj: Coords = (0..na).map(|r| g[(r, j)].clone()).collect();
            let prod = a.mul_vec(&fi, &gj);
            axpy(&mut acc, coef, &prod);
        }
        for r in 0..na {
            out[(r, c)] = acc[r].clone();
        }
    }
    out
}

/// Unit of the convolution algebra: c -> eps(c) 1_A.
pub fn convolution_unit(ch: &HopfAlgebra, a: &Algebra) -> Matrix {
    let nc = ch.dim();
    let na = a.dim();
    let fld = a.field();
    Matrix::from_fn(fld, na, nc, |r, c| &a.unit()[r] * &ch.0.counit[c])
}

/// Two-sided convolution inverse, or None.
pub fn convolution_inverse(ch: &HopfAlgebra, a: &Algebra, f: &Matrix) -> Option<Matrix> {
    let nc = ch.dim();
    let na = a.dim();
    let fld = a.field();
    // unknowns u[r][c] flattened r * nc + c; equations: for each c, row r:
    // sum over Delta(c) terms of (f(c1) u(c2))[r] = eps(c) unit[r]
    let unknowns = na * nc;
    let mut sys = Matrix::zero(fld, nc * na, unknowns);
    let mut rhs = Vec::with_capacity(nc * na);
    for c in 0..nc {
        for r in 0..na {
            rhs.push(&a.unit()[r] * &ch.0.counit[c]);
        }
    }
    for c in 0..nc {
        for (t, coef) in ch.comult_basis(c) {
            let (i, j) = (t / nc, t % nc);
            let fi: Coords = (0..na).map(|r| f[(r, i)].clone()).collect();
            // (f(c1) * u(c2))[r] = sum_s coef * (fi * e_s)[r] u[s][j]
            for s in 0..na {
                let prod = a.mul_vec(&fi, &basis_vec(fld, na, s));
                for r in 0..na {
                    if prod[r].is_zero() {
                        continue;
                    }
                    let row = c * na + r;
                    let col = s * nc + j;
                    sys[(row, col)] = &sys[(row, col)] + &(coef * &prod[r]);
                }
            }
        }
    }
    let sol = sys.solve(&rhs)?;
    let u = Matrix::from_fn(fld, na, nc, |r, c| sol[r * nc + c].clone());
    // verify two-sided
    let unit = convolution_unit(ch, a);
    if convolution(ch, a, f, &u) == unit && convolution(ch, a, &u, f) == unit {
        Some(u)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// winding automorphisms and stabilizers
// ---------------------------------------------------------------------------

/// Winding automorphism h -> sum beta(h_1) h_2 of a character beta.
pub fn winding(h: &HopfAlgebra, beta: &Coords) -> Matrix {
    let n = h.dim();
    let f = h.field();
    let mut m = Matrix::zero(f, n, n);
    for i in 0..n {
        for (t, c) in h.comult_basis(i) {
            let (a, b) = (t / n, t % n);
            if !beta[a].is_zero() {
                m[(b, i)] = &m[(b, i)] + &(c * &beta[a]);
            }
        }
    }
    m
}

/// stab(V) = characters beta with k_beta (x) V isomorphic to V, computed via
/// the winding-twisted action.
pub fn stabilizer(h: &HopfAlgebra, v: &ModuleRep, chars: &[Coords]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, beta) in chars.iter().enumerate() {
        let r = winding(h, beta);
        let tw = v.twist_by(&r);
        if algebra::is_isomorphic(&tw, v)? {
            out.push(i);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// modules through the Hopf structure
// ---------------------------------------------------------------------------

pub fn trivial_module(h: &HopfAlgebra) -> ModuleRep {
    ModuleRep::one_dimensional(h.algebra(), &h.0.counit.clone())
}

/// V (x) W with the diagonal action through Delta.
pub fn tensor_module(h: &HopfAlgebra, v: &ModuleRep, w: &ModuleRep) -> ModuleRep {
    let n = h.dim();
    let f = h.field();
    let d = v.dim * w.dim;
    let mut action = Vec::with_capacity(n);
    for i in 0..n {
        let mut m = Matrix::zero(f, d, d);
        for (t, c) in h.comult_basis(i) {
            let (a, b) = (t / n, t % n);
            // kron(v.action[a], w.action[b]) scaled by c
            for r1 in 0..v.dim {
                for c1 in 0..v.dim {
                    let x = &v.action[a][(r1, c1)];
                    if x.is_zero() {
                        continue;
                    }
                    for r2 in 0..w.dim {
                        for c2 in 0..w.dim {
                            let y = &w.action[b][(r2, c2)];
                            if y.is_zero() {
                                continue;
                            }
                            let idx = (r1 * w.dim + r2, c1 * w.dim + c2);
                            m[idx] = &m[idx] + &(&(c * x) * y);
                        }
                    }
                }
            }
        }
        action.push(m);
    }
    ModuleRep {
        algebra: h.algebra().clone(),
        dim: d,
        action,
    }
}

/// Left dual module: h acts on V* by the transpose of S(h) on V.
pub fn dual_module(h: &HopfAlgebra, v: &ModuleRep) -> ModuleRep {
    let n = h.dim();
    let action = (0..n)
        .map(|i| {
            let si: Coords = (0..n).map(|r| h.0.antipode[(r, i)].clone()).collect();
            v.action_of(&si).transpose()
        })
        .collect();
    ModuleRep {
        algebra: h.algebra().clone(),
        dim: v.dim,
        action,
    }
}

// ---------------------------------------------------------------------------
// morphisms, subalgebras, quotients, exact sequences
// ---------------------------------------------------------------------------

/// A linear map source -> target intended to be a Hopf morphism.
pub struct HopfMorphism {
    pub source: HopfAlgebra,
    pub target: HopfAlgebra,
    /// (dim target) x (dim source)
    pub matrix: Matrix,
}

pub fn verify_morphism(m: &HopfMorphism) -> Result<()> {
    let (src, tgt, f) = (&m.source, &m.target, &m.matrix);
    if f.rows() != tgt.dim() || f.cols() != src.dim() {
        return Err(Error::InvalidInput("morphism matrix shape mismatch".into()));
    }
    let ns = src.dim();
    let nt = tgt.dim();
    let fld = src.field();
    if src.field() != tgt.field() {
        return Err(Error::InvalidInput("morphism between different fields".into()));
    }
    if f.apply(src.unit()) != *tgt.unit() {
        return Err(Error::Verification("morphism does not preserve 1".into()));
    }
    for i in 0..ns {
        for j in 0..ns {
            let prod = algebra::densify(fld, ns, src.algebra().mul_basis(i, j));
            let lhs = f.apply(&prod);
            let fi = f.apply(&basis_vec(fld, ns, i));
            let fj = f.apply(&basis_vec(fld, ns, j));
            if lhs != tgt.algebra().mul_vec(&fi, &fj) {
                return Err(Error::Verification(format!(
                    "morphism not multiplicative at ({i},{j})"
                )));
            }
        }
    }
    for i in 0..ns {
        // (f (x) f) Delta_src(e_i) vs Delta_tgt(f e_i)
        let mut lhs = zero_vec(fld, nt * nt);
        for (t, c) in src.comult_basis(i) {
            let (a, b) = (t / ns, t % ns);
            let fa = f.apply(&basis_vec(fld, ns, a));
            let fb = f.apply(&basis_vec(fld, ns, b));
            for (r, x) in fa.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (s, y) in fb.iter().enumerate() {
                    if !y.is_zero() {
                        lhs[r * nt + s] = &lhs[r * nt + s] + &(&(c * x) * y);
                    }
                }
            }
        }
        let rhs = tgt.comult_vec(&f.apply(&basis_vec(fld, ns, i)));
        if lhs != rhs {
            return Err(Error::Verification(format!(
                "morphism not comultiplicative at basis {i}"
            )));
        }
        if tgt.counit_of(&f.apply(&basis_vec(fld, ns, i))) != src.0.counit[i] {
            return Err(Error::Verification(format!(
                "morphism does not preserve counit at basis {i}"
            )));
        }
        let lhs_s = f.apply(&src.antipode_of(&basis_vec(fld, ns, i)));
        let rhs_s = tgt.antipode_of(&f.apply(&basis_vec(fld, ns, i)));
        if lhs_s != rhs_s {
            return Err(Error::Verification(format!(
                "morphism does not intertwine antipodes at basis {i}"
            )));
        }
    }
    Ok(())
}

/// Hopf subalgebra on an explicit subspace closed under all structure maps.
pub fn hopf_subalgebra(h: &HopfAlgebra, basis: &Subspace) -> Result<(HopfAlgebra, Matrix)> {
    let (alg, incl) = h.algebra().subalgebra(basis)?;
    let d = basis.dim();
    let n = h.dim();
    let f = h.field();
    // tensor-square coordinates: columns b_i (x) b_j over the ambient pairs
    let mut cols: Vec<Coords> = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let mut v = zero_vec(f, n * n);
            for (a, x) in basis.basis_row(i).iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (b, y) in basis.basis_row(j).iter().enumerate() {
                    if !y.is_zero() {
                        v[a * n + b] = &v[a * n + b] + &(x * y);
                    }
                }
            }
            cols.push(v);
        }
    }
    let tensor_mat = Matrix::from_fn(f, n * n, d * d, |r, c| cols[c][r].clone());
    let mut comult = Vec::with_capacity(d);
    for i in 0..d {
        let dv = h.comult_vec(basis.basis_row(i));
        let sol = tensor_mat.solve(&dv).ok_or_else(|| {
            Error::Verification("subspace not closed under comultiplication".into())
        })?;
        comult.push(sparsify(&sol));
    }
    let counit: Coords = (0..d).map(|i| h.counit_of(basis.basis_row(i))).collect();
    // antipode: S(b_i) expressed in the sub-basis
    let sub_mat = Matrix::from_fn(f, n, d, |r, c| basis.basis_row(c)[r].clone());
    let mut antipode = Matrix::zero(f, d, d);
    for i in 0..d {
        let s = h.antipode_of(basis.basis_row(i));
        let sol = sub_mat
            .solve(&s)
            .ok_or_else(|| Error::Verification("subspace not closed under antipode".into()))?;
        for r in 0..d {
            antipode[(r, i)] = sol[r].clone();
        }
    }
    let sub = HopfAlgebra::new(alg, comult, counit, antipode);
    let report = verify_hopf_axioms(&sub);
    if !report.all_pass() {
        return Err(Error::Verification(format!(
            "subalgebra fails Hopf axioms: {:?}",
            report.witness
        )));
    }
    Ok((sub, incl))
}

/// Is the subspace K (a Hopf subalgebra) normal in H: both adjoint actions
/// keep it stable.
pub fn is_normal_subalgebra(h: &HopfAlgebra, k: &Subspace) -> bool {
    let n = h.dim();
    let f = h.field();
    let alg = h.algebra();
    for r in 0..k.dim() {
        let kv = k.basis_row(r);
        for i in 0..n {
            let mut adl = zero_vec(f, n);
            let mut adr = zero_vec(f, n);
            for (t, c) in h.comult_basis(i) {
                let (a, b) = (t / n, t % n);
                let sb: Coords = (0..n).map(|rr| h.0.antipode[(rr, b)].clone()).collect();
                let sa: Coords = (0..n).map(|rr| h.0.antipode[(rr, a)].clone()).collect();
                let l = alg.mul_vec(&alg.mul_vec(&basis_vec(f, n, a), kv), &sb);
                axpy(&mut adl, c, &l);
                let rr = alg.mul_vec(&alg.mul_vec(&sa, kv), &basis_vec(f, n, b));
                axpy(&mut adr, c, &rr);
            }
            if !k.contains(&adl) || !k.contains(&adr) {
                return false;
            }
        }
    }
    true
}

/// K^+ = K intersect ker(eps).
pub fn augmentation_part(h: &HopfAlgebra, k: &Subspace) -> Result<Subspace> {
    let n = h.dim();
    let f = h.field();
    let ker_eps = Matrix::from_fn(f, 1, n, |_, c| h.0.counit[c].clone()).kernel();
    k.intersect(&ker_eps)
}

pub struct HopfQuotient {
    pub quotient: HopfAlgebra,
    /// (dim quotient) x (dim H)
    pub projection: Matrix,
    pub kernel: Subspace,
}

/// H / K^+H for a normal Hopf subalgebra K, with the induced Hopf structure,
/// re-verified.
pub fn quotient_hopf(h: &HopfAlgebra, k: &Subspace) -> Result<HopfQuotient> {
    if !is_normal_subalgebra(h, k) {
        return Err(Error::InvalidInput("quotient by a non-normal subalgebra".into()));
    }
    let n = h.dim();
    let f = h.field();
    let kplus = augmentation_part(h, k)?;
    // K+H = span of k * e_j; normality makes it two-sided
    let mut rows = Vec::new();
    for r in 0..kplus.dim() {
        for j in 0..n {
            rows.push(h.algebra().mul_vec(kplus.basis_row(r), &basis_vec(f, n, j)));
        }
    }
    let ideal = Subspace::from_spanning(f, n, rows);
    // check the two-sided span agrees
    let mut rows_r = Vec::new();
    for r in 0..kplus.dim() {
        for j in 0..n {
            rows_r.push(h.algebra().mul_vec(&basis_vec(f, n, j), kplus.basis_row(r)));
        }
    }
    let ideal_r = Subspace::from_spanning(f, n, rows_r);
    if ideal != ideal_r {
        return Err(Error::Verification("K+H != HK+ despite normality check".into()));
    }
    // Hopf ideal checks
    for r in 0..ideal.dim() {
        let v = ideal.basis_row(r);
        if !h.counit_of(v).is_zero() {
            return Err(Error::Verification("quotient ideal not in ker eps".into()));
        }
        if !ideal.contains(&h.antipode_of(v)) {
            return Err(Error::Verification("quotient ideal not antipode-stable".into()));
        }
    }
    let (qalg, qmap) = quotient_algebra(h.algebra(), &ideal)?;
    let q = qalg.dim();
    // Delta(v) in I (x) H + H (x) I check, and induced comultiplication
    let mut comult = Vec::with_capacity(q);
    for (qi, &rep) in qmap.reps.iter().enumerate() {
        let _ = qi;
        let dv = h.comult_vec(&basis_vec(f, n, rep));
        let mut out = zero_vec(f, q * q);
        for (t, c) in sparsify(&dv) {
            let (a, b) = (t / n, t % n);
            let pa = qmap.project(&basis_vec(f, n, a));
            let pb = qmap.project(&basis_vec(f, n, b));
            for (r, x) in pa.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (s, y) in pb.iter().enumerate() {
                    if !y.is_zero() {
                        out[r * q + s] = &out[r * q + s] + &(&(&c * x) * y);
                    }
                }
            }
        }
        comult.push(sparsify(&out));
    }
    let counit: Coords = qmap
        .reps
        .iter()
        .map(|&rep| h.0.counit[rep].clone())
        .collect();
    let mut antipode = Matrix::zero(f, q, q);
    for (qi, &rep) in qmap.reps.iter().enumerate() {
        let s = h.antipode_of(&basis_vec(f, n, rep));
        let ps = qmap.project(&s);
        for r in 0..q {
            antipode[(r, qi)] = ps[r].clone();
        }
    }
    let quotient = HopfAlgebra::new(qalg, comult, counit, antipode);
    let report = verify_hopf_axioms(&quotient);
    if !report.all_pass() {
        return Err(Error::Verification(format!(
            "quotient fails Hopf axioms: {:?}",
            report.witness
        )));
    }
    Ok(HopfQuotient {
        quotient,
        projection: qmap.proj,
        kernel: ideal,
    })
}

/// Full check of 1 -> K -> H -> L -> 1: injectivity, surjectivity, morphism
/// laws, normality, ker(pi) = iota(K+)H, and dim H = dim K * dim L.
pub fn verify_exact_sequence(
    iota: &HopfMorphism,
    pi: &HopfMorphism,
) -> Result<()> {
    let k = &iota.source;
    let h = &iota.target;
    let l = &pi.target;
    if pi.source.dim() != h.dim() {
        return Err(Error::InvalidInput("sequence maps do not compose".into()));
    }
    verify_morphism(iota)?;
    verify_morphism(pi)?;
    if iota.matrix.rank() != k.dim() {
        return Err(Error::Verification("iota not injective".into()));
    }
    if pi.matrix.rank() != l.dim() {
        return Err(Error::Verification("pi not surjective".into()));
    }
    if h.dim() != k.dim() * l.dim() {
        return Err(Error::Verification("dim H != dim K * dim L".into()));
    }
    // image of iota as a subspace
    let f = h.field();
    let mut rows = Vec::new();
    for i in 0..k.dim() {
        rows.push(iota.matrix.apply(&basis_vec(f, k.dim(), i)));
    }
    let image = Subspace::from_spanning(f, h.dim(), rows);
    if !is_normal_subalgebra(h, &image) {
        return Err(Error::Verification("iota(K) not normal in H".into()));
    }
    let kplus = augmentation_part(h, &image)?;
    let mut irows = Vec::new();
    for r in 0..kplus.dim() {
        for j in 0..h.dim() {
            irows.push(h.algebra().mul_vec(kplus.basis_row(r), &basis_vec(f, h.dim(), j)));
        }
    }
    let kplus_h = Subspace::from_spanning(f, h.dim(), irows);
    let ker_pi = pi.matrix.kernel();
    if kplus_h != ker_pi {
        return Err(Error::Verification("ker pi != iota(K+)H".into()));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// fingerprints
// ---------------------------------------------------------------------------

/// Isomorphism invariants of one side (H or its dual).
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct FingerprintSide {
    pub dim: usize,
    pub coradical_dims: Vec<usize>,
    pub grouplike_count: usize,
    pub primitive_dim: usize,
    pub antipode_order: usize,
    pub commutative: bool,
    pub cocommutative: bool,
    pub semisimple: bool,
    pub character_count: usize,
    pub simple_dims: Vec<usize>,
}

/// Invariant tuple for H together with the same data for H*. Equality is
/// necessary for isomorphism; inequality certifies non-isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Fingerprint {
    pub primal: FingerprintSide,
    pub dual: FingerprintSide,
}

fn fingerprint_side(h: &HopfAlgebra) -> Result<FingerprintSide> {
    let corad = coradical_filtration(h)?;
    let gl = grouplikes(h)?;
    let prim = primitives(h)?;
    let bs = block_structure(h.algebra())?;
    Ok(FingerprintSide {
        dim: h.dim(),
        coradical_dims: corad.iter().map(|s| s.dim()).collect(),
        grouplike_count: gl.elements.len(),
        primitive_dim: prim.dim(),
        antipode_order: antipode_order(h)?,
        commutative: h.algebra().is_commutative(),
        cocommutative: is_cocommutative(h),
        semisimple: is_semisimple(h)?,
        character_count: algebra::character_count_geometric(&bs),
        simple_dims: algebra::simple_dims_geometric(&bs),
    })
}

pub fn fingerprint(h: &HopfAlgebra) -> Result<Fingerprint> {
    Ok(Fingerprint {
        primal: fingerprint_side(h)?,
        dual: fingerprint_side(&h.dual())?,
    })
}

// ---------------------------------------------------------------------------
// Ext^1 identities and graded dimensions
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtReport {
    pub dim_l: usize,
    pub dim_ext1: usize,
    pub dim_m_cap_n_over_mn: usize,
    pub dim_m_over_m2: usize,
    pub dim_p_dual: usize,
}

/// ker(eps) as a subspace.
pub fn augmentation_ideal(h: &HopfAlgebra) -> Subspace {
    let n = h.dim();
    Matrix::from_fn(h.field(), 1, n, |_, c| h.0.counit[c].clone()).kernel()
}

/// dim Hom_H(M, k) = dim(M / mM) for a submodule M of the regular module
/// given as a subspace closed under left multiplication.
fn hom_to_trivial_dim(h: &HopfAlgebra, msub: &Subspace) -> usize {
    let m = augmentation_ideal(h);
    let mm = product_space(h.algebra(), &m, msub);
    msub.dim() - mm.dim()
}

/// All four quantities of the Ext^1 dimension identities, computed
/// independently; `e_l` is the lifted primitive idempotent of L's block and
/// `l` the simple module itself.
pub fn ext_dimensions(h: &HopfAlgebra, l: &ModuleRep, e_l: &Coords) -> Result<ExtReport> {
    let n = h.dim();
    let f = h.field();
    let alg = h.algebra();
    let m = augmentation_ideal(h);
    // annihilator ideal of L
    let mut sys = Matrix::zero(f, l.dim * l.dim, n);
    for i in 0..n {
        let ai = &l.action[i];
        for r in 0..l.dim {
            for c in 0..l.dim {
                sys[(r * l.dim + c, i)] = ai[(r, c)].clone();
            }
        }
    }
    let ann = sys.kernel();
    let m_cap_n = m.intersect(&ann)?;
    let mn = product_space(alg, &m, &ann);
    if !m_cap_n.contains_subspace(&mn) {
        return Err(Error::Verification("mn not inside m cap n".into()));
    }
    // Ext^1(L, k) via the projective presentation 0 -> rad(P) -> P -> L -> 0
    let rad = radical(alg)?;
    let mut prows = Vec::new();
    for i in 0..n {
        prows.push(alg.mul_vec(&basis_vec(f, n, i), e_l));
    }
    let p_sub = Subspace::from_spanning(f, n, prows);
    let k_sub = product_space(alg, &rad, &p_sub);
    let hom_p = hom_to_trivial_dim(h, &p_sub);
    let hom_k = hom_to_trivial_dim(h, &k_sub);
    // dim Hom(L, k): 1 iff L is the trivial module
    let triv = trivial_module(h);
    let hom_l = if l.dim == 1 && algebra::is_isomorphic(l, &triv)? {
        1
    } else {
        0
    };
    let dim_ext1 = hom_k + hom_l - hom_p;
    let m2 = product_space(alg, &m, &m);
    let dual = h.dual();
    let p_dual = primitives(&dual)?;
    Ok(ExtReport {
        dim_l: l.dim,
        dim_ext1,
        dim_m_cap_n_over_mn: m_cap_n.dim() - mn.dim(),
        dim_m_over_m2: m.dim() - m2.dim(),
        dim_p_dual: p_dual.dim(),
    })
}

/// Dimensions of m^i / m^(i+1) for the augmentation ideal m, until m^i = 0
/// or the chain stabilizes.
pub fn graded_dims(h: &HopfAlgebra) -> Vec<usize> {
    let alg = h.algebra();
    let m = augmentation_ideal(h);
    let mut dims = vec![h.dim() - m.dim()];
    let mut cur = m.clone();
    loop {
        let next = product_space(alg, &cur, &m);
        dims.push(cur.dim() - next.dim());
        if next.dim() == 0 || next.dim() >= cur.dim() {
            break;
        }
        cur = next;
    }
    dims
}

/// Simple modules of H over a splitting extension, together with their
/// lifted idempotents and the (possibly extended) Hopf algebra.
pub struct SimpleModules {
    pub hopf: HopfAlgebra,
    pub ext_degree: usize,
    pub simples: Vec<ModuleRep>,
    pub idempotents: Vec<Coords>,
    pub entries: Vec<(usize, usize, usize)>,
    pub radical: Subspace,
}

pub fn simple_modules(h: &HopfAlgebra) -> Result<SimpleModules> {
    let dec = decompose_regular(h.algebra())?;
    let hopf = if dec.ext_degree > 1 {
        let (_, emb) = extend_field(h.field(), dec.ext_degree)?;
        h.extend_scalars(&emb)
    } else {
        h.clone()
    };
    let mut simples = Vec::new();
    for e in &dec.idempotents {
        simples.push(simple_module_for_idempotent(&dec.algebra, &dec.radical, e)?);
    }
    Ok(SimpleModules {
        hopf,
        ext_degree: dec.ext_degree,
        simples,
        idempotents: dec.idempotents,
        entries: dec.entries,
        radical: dec.radical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::field::make_field;

    #[test]
    fn cyclic_group_hopf_axioms() {
        let f5 = make_field(5, 1).unwrap();
        let h = catalog::group_algebra(&f5, &[5]).unwrap();
        assert!(verify_hopf_axioms(&h).all_pass());
        let gl = grouplikes(&h).unwrap();
        assert_eq!(gl.elements.len(), 5);
        assert_eq!(gl.ext_degree, 1);
        // primitives vanish in a group algebra
        assert_eq!(primitives(&h).unwrap().dim(), 0);
        // integrals: sum of all group elements, eps = 0
        let ints = integrals(&h).unwrap();
        assert_eq!(ints.left.dim(), 1);
        assert!(h.counit_of(ints.left.basis_row(0)).is_zero());
        let preds = predicates(&h).unwrap();
        assert!(preds.pointed && preds.commutative && preds.cocommutative);
        assert!(!preds.semisimple && preds.cosemisimple);
        assert!(preds.local && !preds.connected);
    }

    #[test]
    fn corrupt_structure_constant_fails_axioms() {
        let f2 = make_field(2, 1).unwrap();
        let h = catalog::group_algebra(&f2, &[2]).unwrap();
        // corrupt the antipode: S(g) = 1 instead of g
        let mut bad_s = Matrix::identity(&f2, 2);
        bad_s[(0, 1)] = f2.one();
        bad_s[(1, 1)] = f2.zero();
        let bad = HopfAlgebra::new(
            h.algebra().clone(),
            (0..2).map(|i| h.comult_basis(i).clone()).collect(),
            h.counit().clone(),
            bad_s,
        );
        let report = verify_hopf_axioms(&bad);
        assert!(!report.antipode);
        assert!(report.associativity && report.coassociativity);
    }

    #[test]
    fn dual_of_cyclic_group() {
        let f3 = make_field(3, 1).unwrap();
        let h = catalog::group_algebra(&f3, &[3]).unwrap();
        let d = h.dual();
        assert!(verify_hopf_axioms(&d).all_pass());
        // dual of k[C_p] has a single group-like
        assert_eq!(grouplikes(&d).unwrap().elements.len(), 1);
        // and is semisimple
        assert!(is_semisimple(&d).unwrap());
        // double dual equals the original exactly
        let dd = d.dual();
        assert_eq!(dd.algebra().unit(), h.algebra().unit());
        for i in 0..h.dim() {
            for j in 0..h.dim() {
                assert_eq!(dd.algebra().mul_basis(i, j), h.algebra().mul_basis(i, j));
            }
            assert_eq!(dd.comult_basis(i), h.comult_basis(i));
        }
        assert_eq!(dd.counit(), h.counit());
        assert_eq!(dd.antipode(), h.antipode());
    }

    #[test]
    fn antipode_orders_on_group_algebras() {
        let f2 = make_field(2, 1).unwrap();
        let h2 = catalog::group_algebra(&f2, &[2]).unwrap();
        assert_eq!(antipode_order(&h2).unwrap(), 1); // g = g^{-1}
        let f5 = make_field(5, 1).unwrap();
        let h5 = catalog::group_algebra(&f5, &[5]).unwrap();
        assert_eq!(antipode_order(&h5).unwrap(), 2);
    }

    #[test]
    fn convolution_inverse_of_identity_is_antipode() {
        let f3 = make_field(3, 1).unwrap();
        let h = catalog::group_algebra(&f3, &[3]).unwrap();
        let id = Matrix::identity(&f3, 3);
        let inv = convolution_inverse(&h, h.algebra(), &id).unwrap();
        assert_eq!(inv, *h.antipode());
        // convolution unit is its own inverse
        let unit = convolution_unit(&h, h.algebra());
        let uinv = convolution_inverse(&h, h.algebra(), &unit).unwrap();
        assert_eq!(uinv, unit);
    }

    #[test]
    fn winding_of_counit_is_identity() {
        let f3 = make_field(3, 1).unwrap();
        let h = catalog::group_algebra(&f3, &[3]).unwrap();
        let r = winding(&h, h.counit());
        assert!(r.is_identity());
    }

    #[test]
    fn tensor_with_unit_algebra() {
        let f2 = make_field(2, 1).unwrap();
        let h = catalog::group_algebra(&f2, &[2]).unwrap();
        let triv = catalog::group_algebra(&f2, &[1]).unwrap();
        let t = triv.tensor_product(&h).unwrap();
        assert!(verify_hopf_axioms(&t).all_pass());
        assert_eq!(t.dim(), h.dim());
        for i in 0..t.dim() {
            for j in 0..t.dim() {
                assert_eq!(t.algebra().mul_basis(i, j), h.algebra().mul_basis(i, j));
            }
        }
    }

    #[test]
    fn quotient_by_unit_subalgebra() {
        let f3 = make_field(3, 1).unwrap();
        let h = catalog::group_algebra(&f3, &[3]).unwrap();
        let unit_sub = Subspace::from_spanning(&f3, 3, vec![h.unit().clone()]);
        let q = quotient_hopf(&h, &unit_sub).unwrap();
        assert_eq!(q.quotient.dim(), 3);
        assert!(verify_hopf_axioms(&q.quotient).all_pass());
    }

    #[test]
    fn ext_dims_for_cyclic_group() {
        let f3 = make_field(3, 1).unwrap();
        let h = catalog::group_algebra(&f3, &[3]).unwrap();
        let sm = simple_modules(&h).unwrap();
        assert_eq!(sm.simples.len(), 1);
        let rep = ext_dimensions(&sm.hopf, &sm.simples[0], &sm.idempotents[0]).unwrap();
        // for k[C_p], L = k: dim(m/m^2) = 1 = dim P(dual)
        assert_eq!(rep.dim_m_over_m2, 1);
        assert_eq!(rep.dim_p_dual, 1);
        assert_eq!(
            rep.dim_l * rep.dim_ext1,
            rep.dim_m_cap_n_over_mn,
            "Ext identity"
        );
        let g = graded_dims(&h);
        assert_eq!(g.iter().sum::<usize>(), 3);
    }
}
