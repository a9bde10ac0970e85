//! Bimodules, intertwiners, hom spaces, the tensor product over an
//! algebra, and the canonical module isomorphisms as explicit matrices.
//!
//! Conventions, fixed once and asserted by the validators:
//!
//! * `left_act[a]` is the matrix of `m ↦ a · m` on column coordinates, so
//!   `λ(a)λ(a') = λ(aa')`.
//! * `right_act[b]` is the matrix of `m ↦ m · b`, so `ρ(b')ρ(b) = ρ(bb')`.
//! * The basis of `M ⊗_k N` is lexicographic Kronecker order
//!   (`x_i ⊗ y_j ↦ i·dim N + j`); bases of quotients complement echelon
//!   pivots of the relation span; bases of hom spaces are echelon kernel
//!   bases. Every "canonical isomorphism" below is pinned down by these
//!   choices and is reproduced bit-identically on re-runs.
//! * Hom-space elements are stored as flattened matrices (row-major), and
//!   the left/right actions on homs act by matrix multiplication on the
//!   flattened coordinates.

use crate::algebra::{Algebra, SimpleModule};
use crate::error::{Error, Result};
use crate::mat::{EchelonSpan, Mat};
use crate::scalar::Scalar;
use num::{One, Zero};
use std::sync::Arc;

/// A finite-dimensional `(A, B)`-bimodule given by its action tensors.
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub left: Arc<Algebra>,
    pub right: Arc<Algebra>,
    pub dim: usize,
    pub left_act: Vec<Mat>,
    pub right_act: Vec<Mat>,
    pub label: String,
}

impl PartialEq for Bimodule {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.left.same_as(&other.left)
            && self.right.same_as(&other.right)
            && self.left_act == other.left_act
            && self.right_act == other.right_act
    }
}

impl Bimodule {
    /// The regular `(A, A)`-bimodule: `A` acting on itself on both sides.
    pub fn regular(alg: &Arc<Algebra>) -> Bimodule {
        let left_act = (0..alg.dim).map(|i| alg.left_mult_mat(i)).collect();
        let right_act = (0..alg.dim).map(|i| alg.right_mult_mat(i)).collect();
        Bimodule {
            left: alg.clone(),
            right: alg.clone(),
            dim: alg.dim,
            left_act,
            right_act,
            label: alg.label.clone(),
        }
    }

    pub fn zero(left: Arc<Algebra>, right: Arc<Algebra>) -> Bimodule {
        let left_act = (0..left.dim).map(|_| Mat::zeros(0, 0)).collect();
        let right_act = (0..right.dim).map(|_| Mat::zeros(0, 0)).collect();
        Bimodule { left, right, dim: 0, left_act, right_act, label: "0".to_string() }
    }

    /// A right `A`-module as a `(Q, A)`-bimodule.
    pub fn from_right_module(alg: &Arc<Algebra>, module: &SimpleModule, label: &str) -> Bimodule {
        Bimodule {
            left: rational_arc(),
            right: alg.clone(),
            dim: module.dim,
            left_act: vec![Mat::identity(module.dim)],
            right_act: module.action.clone(),
            label: label.to_string(),
        }
    }

    pub fn left_act_of(&self, a: &[Scalar]) -> Mat {
        combine(&self.left_act, a, self.dim)
    }

    pub fn right_act_of(&self, b: &[Scalar]) -> Mat {
        combine(&self.right_act, b, self.dim)
    }

    /// Exact check of all bimodule axioms; lists human-readable defects.
    pub fn validate(&self) -> Result<()> {
        let mut defects = Vec::new();
        if self.left_act.len() != self.left.dim || self.right_act.len() != self.right.dim {
            defects.push("action tensor count mismatch".to_string());
        }
        for m in self.left_act.iter().chain(&self.right_act) {
            if m.rows() != self.dim || m.cols() != self.dim {
                defects.push("action matrix shape mismatch".to_string());
            }
        }
        if defects.is_empty() && self.dim > 0 {
            if !self.left_act_of(&self.left.unit).is_identity() {
                defects.push("left unit does not act as identity".to_string());
            }
            if !self.right_act_of(&self.right.unit).is_identity() {
                defects.push("right unit does not act as identity".to_string());
            }
            let n = self.left.dim;
            for i in 0..n {
                for j in 0..n {
                    let mut expect = Mat::zeros(self.dim, self.dim);
                    for k in 0..n {
                        let c = self.left.c(i, j, k);
                        if !c.is_zero() {
                            expect = expect.add(&self.left_act[k].scale(c));
                        }
                    }
                    if self.left_act[i].mul(&self.left_act[j]) != expect {
                        defects.push(format!("left action law fails at ({i},{j})"));
                    }
                }
            }
            let m = self.right.dim;
            for i in 0..m {
                for j in 0..m {
                    let mut expect = Mat::zeros(self.dim, self.dim);
                    for k in 0..m {
                        let c = self.right.c(i, j, k);
                        if !c.is_zero() {
                            expect = expect.add(&self.right_act[k].scale(c));
                        }
                    }
                    if self.right_act[j].mul(&self.right_act[i]) != expect {
                        defects.push(format!("right action law fails at ({i},{j})"));
                    }
                }
            }
            for i in 0..n {
                for j in 0..m {
                    if self.left_act[i].mul(&self.right_act[j])
                        != self.right_act[j].mul(&self.left_act[i])
                    {
                        defects.push(format!("actions do not commute at ({i},{j})"));
                    }
                }
            }
        }
        if defects.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(format!("bimodule `{}`: {}", self.label, defects.join("; "))))
        }
    }
}

fn combine(mats: &[Mat], coeffs: &[Scalar], dim: usize) -> Mat {
    let mut out = Mat::zeros(dim, dim);
    for (m, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.add(&m.scale(c));
        }
    }
    out
}

pub(crate) fn rational_arc() -> Arc<Algebra> {
    Arc::new(Algebra::rational())
}

/// Views an `(A, B)`-bimodule as a `(B°, A°)`-bimodule: the identity on
/// the underlying space with the action tensors swapped. Involutive.
pub fn as_right_over_op(m: &Bimodule) -> Bimodule {
    Bimodule {
        left: Arc::new(m.right.opposite()),
        right: Arc::new(m.left.opposite()),
        dim: m.dim,
        left_act: m.right_act.clone(),
        right_act: m.left_act.clone(),
        label: format!("swap({})", m.label),
    }
}

/// External tensor product over the rationals:
/// `(A,B)-mod × (C,D)-mod → (A⊗C, B⊗D)-mod` on `M ⊗_k N`.
pub fn external_tensor(m: &Bimodule, n: &Bimodule) -> Bimodule {
    let left = Arc::new(Algebra::tensor(&m.left, &n.left));
    let right = Arc::new(Algebra::tensor(&m.right, &n.right));
    let left_act = (0..left.dim)
        .map(|g| m.left_act[g / n.left.dim].kron(&n.left_act[g % n.left.dim]))
        .collect();
    let right_act = (0..right.dim)
        .map(|g| m.right_act[g / n.right.dim].kron(&n.right_act[g % n.right.dim]))
        .collect();
    Bimodule {
        left,
        right,
        dim: m.dim * n.dim,
        left_act,
        right_act,
        label: format!("({})[x]({})", m.label, n.label),
    }
}

/// A 2-cell: a linear map between parallel bimodules commuting with both
/// actions. The matrix acts on column coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Intertwiner {
    pub source: Bimodule,
    pub target: Bimodule,
    pub mat: Mat,
}

impl Intertwiner {
    pub fn identity(m: &Bimodule) -> Intertwiner {
        Intertwiner { source: m.clone(), target: m.clone(), mat: Mat::identity(m.dim) }
    }

    pub fn zero(source: &Bimodule, target: &Bimodule) -> Intertwiner {
        Intertwiner {
            source: source.clone(),
            target: target.clone(),
            mat: Mat::zeros(target.dim, source.dim),
        }
    }

    /// The shared validator: parallel endpoints, shape, and exact
    /// commutation with every basis action on both sides.
    pub fn validate(&self) -> Result<()> {
        if !self.source.left.same_as(&self.target.left)
            || !self.source.right.same_as(&self.target.right)
        {
            return Err(Error::ObjectMismatch(format!(
                "intertwiner `{}` -> `{}` endpoints differ",
                self.source.label, self.target.label
            )));
        }
        if self.mat.rows() != self.target.dim || self.mat.cols() != self.source.dim {
            return Err(Error::Invalid("intertwiner matrix shape mismatch".to_string()));
        }
        for i in 0..self.source.left.dim {
            if self.mat.mul(&self.source.left_act[i]) != self.target.left_act[i].mul(&self.mat) {
                return Err(Error::Invalid(format!("intertwiner fails left action at basis {i}")));
            }
        }
        for i in 0..self.source.right.dim {
            if self.mat.mul(&self.source.right_act[i]) != self.target.right_act[i].mul(&self.mat) {
                return Err(Error::Invalid(format!("intertwiner fails right action at basis {i}")));
            }
        }
        Ok(())
    }

    pub fn is_invertible(&self) -> bool {
        self.mat.is_invertible()
    }

    pub fn inverse(&self) -> Result<Intertwiner> {
        Ok(Intertwiner {
            source: self.target.clone(),
            target: self.source.clone(),
            mat: self.mat.inverse()?,
        })
    }
}

/// Basis of the space of intertwiners `M → N` (maps commuting with both
/// actions), as flattened `N.dim × M.dim` matrices in echelon form.
pub fn intertwiner_space(m: &Bimodule, n: &Bimodule) -> Mat {
    assert!(m.left.same_as(&n.left) && m.right.same_as(&n.right), "endpoints differ");
    let mut constraints = Mat::zeros(0, n.dim * m.dim);
    for (src, tgt) in
        m.left_act.iter().zip(&n.left_act).chain(m.right_act.iter().zip(&n.right_act))
    {
        let c = Mat::identity(n.dim).kron(&src.transpose()).sub(&tgt.kron(&Mat::identity(m.dim)));
        constraints = constraints.vstack(&c);
    }
    constraints.kernel_basis().basis
}

/// Kernel of the right-module commutation constraints between two right
/// modules given by action tensors over the same algebra basis. Returns
/// the echelon basis of flattened `tgt_dim × src_dim` maps plus pivots.
pub(crate) fn right_module_homs(src_act: &[Mat], tgt_act: &[Mat]) -> (Mat, Vec<usize>) {
    assert_eq!(src_act.len(), tgt_act.len());
    let sd = src_act.first().map_or(0, Mat::rows);
    let td = tgt_act.first().map_or(0, Mat::rows);
    let mut constraints = Mat::zeros(0, td * sd);
    for (s, t) in src_act.iter().zip(tgt_act) {
        let c = Mat::identity(td).kron(&s.transpose()).sub(&t.kron(&Mat::identity(sd)));
        constraints = constraints.vstack(&c);
    }
    let basis = constraints.kernel_basis().basis;
    let mut span = EchelonSpan::new(td * sd);
    for r in 0..basis.rows() {
        span.insert(basis.row_vec(r));
    }
    (span.basis_matrix(), span.pivots().to_vec())
}

/// A hom space `hom_B(M, N)` of right-module maps, carrying its `(C, A)`
/// bimodule structure (`C` from the left of `N`, `A` from the left of
/// `M`): `(c·f)(x) = c·f(x)` and `(f·a)(x) = f(a·x)`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub bim: Bimodule,
    /// Echelon rows, each a flattened `tgt_dim × src_dim` map.
    pub basis: Mat,
    pub pivots: Vec<usize>,
    pub src_dim: usize,
    pub tgt_dim: usize,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The `i`-th basis element as an explicit matrix `M → N`.
    pub fn element(&self, i: usize) -> Mat {
        Mat::unflatten(self.tgt_dim, self.src_dim, &self.basis.row_vec(i))
    }

    /// Coordinates of a map in the echelon basis; panics when the map is
    /// outside the hom space (an internal invariant violation).
    pub fn coords_of(&self, f: &Mat) -> Vec<Scalar> {
        let flat = f.flatten();
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| flat[p].clone()).collect();
        let mut check = flat;
        for (c, coeff) in coords.iter().enumerate() {
            if !coeff.is_zero() {
                for (x, b) in check.iter_mut().zip(self.basis.row_vec(c)) {
                    if !b.is_zero() {
                        *x = &*x - &(coeff * &b);
                    }
                }
            }
        }
        assert!(
            check.iter().all(Zero::is_zero),
            "map does not lie in the hom space `{}`",
            self.bim.label
        );
        coords
    }
}

/// `hom_B(M, N)` for `M: (A,B)` and `N: (C,B)`, as a `(C, A)`-bimodule on
/// the echelon kernel basis of the commutation constraints.
pub fn hom_right(m: &Bimodule, n: &Bimodule) -> Result<HomSpace> {
    if !m.right.same_as(&n.right) {
        return Err(Error::ObjectMismatch(format!(
            "hom requires matching right algebras: `{}` vs `{}`",
            m.right.label, n.right.label
        )));
    }
    let (basis, pivots) = right_module_homs(&m.right_act, &n.right_act);
    let h = basis.rows();
    let mut span = EchelonSpan::new(basis.cols());
    for r in 0..h {
        span.insert(basis.row_vec(r));
    }
    let left_act: Vec<Mat> = (0..n.left.dim)
        .map(|c| {
            Mat::from_fn(h, h, |i, j| {
                let f = Mat::unflatten(n.dim, m.dim, &basis.row_vec(j));
                let moved = n.left_act[c].mul(&f).flatten();
                span.coords(&moved).expect("postcomposition preserves homs")[i].clone()
            })
        })
        .collect();
    let right_act: Vec<Mat> = (0..m.left.dim)
        .map(|a| {
            Mat::from_fn(h, h, |i, j| {
                let f = Mat::unflatten(n.dim, m.dim, &basis.row_vec(j));
                let moved = f.mul(&m.left_act[a]).flatten();
                span.coords(&moved).expect("precomposition preserves homs")[i].clone()
            })
        })
        .collect();
    let bim = Bimodule {
        left: n.left.clone(),
        right: m.left.clone(),
        dim: h,
        left_act,
        right_act,
        label: format!("hom_{}({},{})", m.right.label, m.label, n.label),
    };
    Ok(HomSpace { bim, basis, pivots, src_dim: m.dim, tgt_dim: n.dim })
}

/// The tensor product over the middle algebra, with the projection from
/// and a section into the ambient `M ⊗_k N`.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub bim: Bimodule,
    /// `M ⊗_k N` with the outer `(A, C)` actions.
    pub ambient: Bimodule,
    pub proj: Mat,
    pub sect: Mat,
}

/// `M ⊗_B N` as the quotient of `M ⊗_k N` by the span of the relations
/// `x·b ⊗ y − x ⊗ b·y`. Relations of a unital generating set of `B`
/// already span the full relation space, which keeps the accumulation
/// small; the echelon basis is the unique RREF of the whole span, so the
/// quotient does not depend on the choice of generators.
pub fn tensor_over(m: &Bimodule, n: &Bimodule) -> Result<TensorProduct> {
    if !m.right.same_as(&n.left) {
        return Err(Error::ObjectMismatch(format!(
            "tensor requires matching middle algebra: `{}` vs `{}`",
            m.right.label, n.left.label
        )));
    }
    let md = m.dim;
    let nd = n.dim;
    let ambient_dim = md * nd;
    let mut rel = EchelonSpan::new(ambient_dim);
    for g in m.right.generating_set() {
        let rho = m.right_act_of(&g);
        let lam = n.left_act_of(&g);
        for x in 0..md {
            for y in 0..nd {
                let mut v = vec![Scalar::zero(); ambient_dim];
                for i in 0..md {
                    let r = rho.at(i, x);
                    if !r.is_zero() {
                        v[i * nd + y] = r.clone();
                    }
                }
                for j in 0..nd {
                    let l = lam.at(j, y);
                    if !l.is_zero() {
                        v[x * nd + j] = &v[x * nd + j] - l;
                    }
                }
                rel.insert(v);
            }
        }
    }
    let (proj, sect) = rel.quotient_maps();
    let qdim = proj.rows();
    let left_act: Vec<Mat> = (0..m.left.dim)
        .map(|a| proj.mul(&m.left_act[a].kron(&Mat::identity(nd))).mul(&sect))
        .collect();
    let right_act: Vec<Mat> = (0..n.right.dim)
        .map(|c| proj.mul(&Mat::identity(md).kron(&n.right_act[c])).mul(&sect))
        .collect();
    let bim = Bimodule {
        left: m.left.clone(),
        right: n.right.clone(),
        dim: qdim,
        left_act,
        right_act,
        label: format!("{}(x){}", m.label, n.label),
    };
    let ambient = Bimodule {
        left: m.left.clone(),
        right: n.right.clone(),
        dim: ambient_dim,
        left_act: (0..m.left.dim).map(|a| m.left_act[a].kron(&Mat::identity(nd))).collect(),
        right_act: (0..n.right.dim).map(|c| Mat::identity(md).kron(&n.right_act[c])).collect(),
        label: format!("{}[k]{}", m.label, n.label),
    };
    Ok(TensorProduct { bim, ambient, proj, sect })
}

/// Dual of a bimodule: for `M: (A, B)` this is `hom_B(M, B)` viewed as an
/// `(A°, B°)`-bimodule. Basis and coordinates agree with the underlying
/// hom space.
pub fn dual_module(m: &Bimodule) -> HomSpace {
    let reg = Bimodule::regular(&m.right);
    let hom = hom_right(m, &reg).expect("regular bimodule always composes");
    let bim = as_right_over_op(&hom.bim);
    HomSpace {
        bim: Bimodule { label: format!("dual({})", m.label), ..bim },
        basis: hom.basis,
        pivots: hom.pivots,
        src_dim: hom.src_dim,
        tgt_dim: hom.tgt_dim,
    }
}

/// Dual of a 2-cell: precomposition `g ↦ g ∘ f`, contravariantly typed
/// `N° → M°` for `f: M → N`.
pub fn intertwiner_adjoint(f: &Intertwiner) -> Intertwiner {
    let dual_src = dual_module(&f.source);
    let dual_tgt = dual_module(&f.target);
    let mut mat = Mat::zeros(dual_src.dim(), dual_tgt.dim());
    for j in 0..dual_tgt.dim() {
        let g = dual_tgt.element(j);
        let coords = dual_src.coords_of(&g.mul(&f.mat));
        for (i, c) in coords.into_iter().enumerate() {
            mat.set(i, j, c);
        }
    }
    Intertwiner { source: dual_tgt.bim, target: dual_src.bim, mat }
}

/// The braiding `M ⊗_A N ≅ N ⊗_{A°} M` induced by the swap of tensor
/// factors through the two quotients.
#[derive(Clone, Debug)]
pub struct Braiding {
    pub src: TensorProduct,
    pub tgt: TensorProduct,
    pub mat: Mat,
}

impl Braiding {
    /// As an intertwiner of the outer `(B, C)` structures (the target is
    /// the `(C°, B°)` module read back through the swap).
    pub fn as_intertwiner(&self) -> Intertwiner {
        Intertwiner {
            source: self.src.bim.clone(),
            target: as_right_over_op(&self.tgt.bim),
            mat: self.mat.clone(),
        }
    }
}

/// `braid_iso(M, N)` for `M: (B, A)` and `N: (A, C)`: the matrix of
/// `x ⊗ y ↦ y ⊗ x` from `M ⊗_A N` to `N ⊗_{A°} M` in quotient bases.
pub fn braid_iso(m: &Bimodule, n: &Bimodule) -> Result<Braiding> {
    let src = tensor_over(m, n)?;
    let n_sw = as_right_over_op(n);
    let m_sw = as_right_over_op(m);
    let tgt = tensor_over(&n_sw, &m_sw)?;
    let mut swap = Mat::zeros(n.dim * m.dim, m.dim * n.dim);
    for i in 0..m.dim {
        for j in 0..n.dim {
            swap.set(j * m.dim + i, i * n.dim + j, Scalar::one());
        }
    }
    let mat = tgt.proj.mul(&swap).mul(&src.sect);
    // The swap must descend to the quotients.
    assert_eq!(mat.mul(&src.proj), tgt.proj.mul(&swap), "braiding ill-defined");
    Ok(Braiding { src, tgt, mat })
}

/// The adjunction isomorphism
/// `hom_B(X ⊗_A M, Y) ≅ hom_A(X, hom_B(M, Y))`,
/// `g ↦ (x ↦ (m ↦ g(x ⊗ m)))`, in the echelon bases of both sides.
#[derive(Clone, Debug)]
pub struct AdjointIso {
    pub lhs: HomSpace,
    pub rhs: HomSpace,
    pub hom_my: HomSpace,
    pub tensor: TensorProduct,
    pub mat: Mat,
}

pub fn adjoint_iso(x: &Bimodule, m: &Bimodule, y: &Bimodule) -> Result<AdjointIso> {
    let tensor = tensor_over(x, m)?;
    let lhs = hom_right(&tensor.bim, y)?;
    let hom_my = hom_right(m, y)?;
    let rhs = hom_right(x, &hom_my.bim)?;
    let mut mat = Mat::zeros(rhs.dim(), lhs.dim());
    for j in 0..lhs.dim() {
        // g as a map from the ambient X ⊗_k M; column (x·dim M + m).
        let g = lhs.element(j).mul(&tensor.proj);
        let mut f = Mat::zeros(hom_my.dim(), x.dim);
        for xc in 0..x.dim {
            let slice = Mat::from_fn(y.dim, m.dim, |r, mc| g.at(r, xc * m.dim + mc).clone());
            let coords = hom_my.coords_of(&slice);
            for (r, c) in coords.into_iter().enumerate() {
                f.set(r, xc, c);
            }
        }
        let coords = rhs.coords_of(&f);
        for (i, c) in coords.into_iter().enumerate() {
            mat.set(i, j, c);
        }
    }
    Ok(AdjointIso { lhs, rhs, hom_my, tensor, mat })
}

/// The double-dual comparison `ψ_P : P → (P°)°`, `p ↦ (g ↦ g(p))`, an
/// intertwiner that is invertible whenever the right algebra is
/// semisimple (every module is then projective).
pub fn double_dual_iso(p: &Bimodule) -> Result<Intertwiner> {
    let (ss, _) = p.right.is_semisimple();
    if !ss {
        return Err(Error::NotSemisimple(p.right.label.clone()));
    }
    let d1 = dual_module(p);
    let d2 = dual_module(&d1.bim);
    let mut mat = Mat::zeros(d2.dim(), p.dim);
    for i in 0..p.dim {
        // Evaluation at p_i sends the j-th dual basis element G_j to
        // G_j(p_i), a map from dual coordinates to the right algebra.
        let psi = Mat::from_fn(p.right.dim, d1.dim(), |r, j| d1.element(j).at(r, i).clone());
        let coords = d2.coords_of(&psi);
        for (r, c) in coords.into_iter().enumerate() {
            mat.set(r, i, c);
        }
    }
    Ok(Intertwiner { source: p.clone(), target: d2.bim, mat })
}

/// The tensor-hom comparison `X ⊗_A hom_A(P, A) ≅ hom_A(P, X)`,
/// `x ⊗ g ↦ (p ↦ x · g(p))`.
#[derive(Clone, Debug)]
pub struct TensorHomIso {
    pub lhs: TensorProduct,
    pub rhs: HomSpace,
    pub dual_p: HomSpace,
    pub mat: Mat,
}

pub fn tensor_hom_iso(x: &Bimodule, p: &Bimodule) -> Result<TensorHomIso> {
    let (ss, _) = p.right.is_semisimple();
    if !ss {
        return Err(Error::NotSemisimple(p.right.label.clone()));
    }
    // hom_A(P, A) with its (A, B) structure.
    let hom_pa = hom_right(p, &Bimodule::regular(&p.right))?;
    let lhs = tensor_over(x, &hom_pa.bim)?;
    let rhs = hom_right(p, x)?;
    let mut mat = Mat::zeros(rhs.dim(), lhs.bim.dim);
    for t in 0..lhs.bim.dim {
        let rep = lhs.sect.col_vec(t);
        let mut map = Mat::zeros(x.dim, p.dim);
        for (idx, coeff) in rep.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let (xi, gj) = (idx / hom_pa.dim(), idx % hom_pa.dim());
            let g = hom_pa.element(gj);
            for pc in 0..p.dim {
                let acted = x.right_act_of(&g.col_vec(pc));
                for r in 0..x.dim {
                    let v = acted.at(r, xi);
                    if !v.is_zero() {
                        let cur = map.at(r, pc) + &(coeff * v);
                        map.set(r, pc, cur);
                    }
                }
            }
        }
        let coords = rhs.coords_of(&map);
        for (r, c) in coords.into_iter().enumerate() {
            mat.set(r, t, c);
        }
    }
    Ok(TensorHomIso { lhs, rhs, dual_p: hom_pa, mat })
}

// ---------------------------------------------------------------------------
// Standalone JSON schemas: a bimodule embeds both algebras, an
// intertwiner embeds both bimodules; rational entries are "p/q" strings
// throughout, and round trips are bit-exact.
// ---------------------------------------------------------------------------

#[derive(serde::Serialize, serde::Deserialize)]
struct BimoduleJson {
    label: String,
    left: Algebra,
    right: Algebra,
    dim: usize,
    left_act: Vec<Mat>,
    right_act: Vec<Mat>,
}

impl serde::Serialize for Bimodule {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        BimoduleJson {
            label: self.label.clone(),
            left: (*self.left).clone(),
            right: (*self.right).clone(),
            dim: self.dim,
            left_act: self.left_act.clone(),
            right_act: self.right_act.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> serde::Deserialize<'de> for Bimodule {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = BimoduleJson::deserialize(de)?;
        let bim = Bimodule {
            left: Arc::new(raw.left),
            right: Arc::new(raw.right),
            dim: raw.dim,
            left_act: raw.left_act,
            right_act: raw.right_act,
            label: raw.label,
        };
        bim.validate().map_err(D::Error::custom)?;
        Ok(bim)
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct IntertwinerJson {
    source: Bimodule,
    target: Bimodule,
    mat: Mat,
}

impl serde::Serialize for Intertwiner {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        IntertwinerJson {
            source: self.source.clone(),
            target: self.target.clone(),
            mat: self.mat.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> serde::Deserialize<'de> for Intertwiner {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = IntertwinerJson::deserialize(de)?;
        let cell = Intertwiner { source: raw.source, target: raw.target, mat: raw.mat };
        cell.validate().map_err(D::Error::custom)?;
        Ok(cell)
    }
}

#[cfg(test)]
pub(crate) mod test_fixtures {
    use super::*;

    /// The row module Q^d as a (Q, M_d(Q))-bimodule.
    pub fn row_module(md: &Arc<Algebra>, d: usize) -> Bimodule {
        assert_eq!(md.dim, d * d);
        let action: Vec<Mat> = (0..d * d)
            .map(|idx| {
                let (a, b) = (idx / d, idx % d);
                let mut m = Mat::zeros(d, d);
                m.set(b, a, Scalar::one());
                m
            })
            .collect();
        Bimodule {
            left: rational_arc(),
            right: md.clone(),
            dim: d,
            left_act: vec![Mat::identity(d)],
            right_act: action,
            label: "rows".to_string(),
        }
    }

    /// The column module Q^d as an (M_d(Q), Q)-bimodule.
    pub fn column_module(md: &Arc<Algebra>, d: usize) -> Bimodule {
        assert_eq!(md.dim, d * d);
        let action: Vec<Mat> = (0..d * d)
            .map(|idx| {
                let (a, b) = (idx / d, idx % d);
                let mut m = Mat::zeros(d, d);
                m.set(a, b, Scalar::one());
                m
            })
            .collect();
        Bimodule {
            left: md.clone(),
            right: rational_arc(),
            dim: d,
            left_act: action,
            right_act: vec![Mat::identity(d)],
            label: "cols".to_string(),
        }
    }

    /// A rational vector space as a (Q, Q)-bimodule.
    pub fn q_space(d: usize, label: &str) -> Bimodule {
        let q = rational_arc();
        Bimodule {
            left: q.clone(),
            right: q,
            dim: d,
            left_act: vec![Mat::identity(d)],
            right_act: vec![Mat::identity(d)],
            label: label.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::test_fixtures::*;
    use super::*;
    use crate::scalar::rat;

    fn arc(a: Algebra) -> Arc<Algebra> {
        Arc::new(a)
    }

    #[test]
    fn regular_bimodule_validates() {
        for alg in [
            Algebra::rational(),
            Algebra::matrix_algebra(2),
            Algebra::group_algebra_elementary_2(1),
            Algebra::dual_numbers(),
        ] {
            Bimodule::regular(&arc(alg)).validate().unwrap();
        }
    }

    #[test]
    fn row_and_column_modules_validate() {
        let m2 = arc(Algebra::matrix_algebra(2));
        row_module(&m2, 2).validate().unwrap();
        column_module(&m2, 2).validate().unwrap();
    }

    #[test]
    fn swap_is_involutive() {
        let m2 = arc(Algebra::matrix_algebra(2));
        let m = row_module(&m2, 2);
        let back = as_right_over_op(&as_right_over_op(&m));
        assert_eq!(m, back);
        as_right_over_op(&m).validate().unwrap();
        let reg = Bimodule::regular(&m2);
        let sw = as_right_over_op(&reg);
        assert_eq!(sw.left_act, reg.right_act);
        assert_eq!(sw.right_act, reg.left_act);
        sw.validate().unwrap();
    }

    #[test]
    fn tensor_over_rationals_is_kronecker() {
        let t = tensor_over(&q_space(2, "Q^2"), &q_space(3, "Q^3")).unwrap();
        assert_eq!(t.bim.dim, 6);
        assert!(t.proj.is_identity());
    }

    #[test]
    fn tensor_rows_columns_collapses() {
        // Independent oracle: brute-force span of all 4·2·2 relation
        // vectors, then compare against the construction.
        let m2 = arc(Algebra::matrix_algebra(2));
        let rows = row_module(&m2, 2);
        let cols = column_module(&m2, 2);
        let mut rel = Mat::zeros(0, 4);
        for b in 0..4 {
            for x in 0..2 {
                for y in 0..2 {
                    let mut v = vec![Scalar::zero(); 4];
                    for i in 0..2 {
                        let r = rows.right_act[b].at(i, x);
                        if !r.is_zero() {
                            v[i * 2 + y] = r.clone();
                        }
                    }
                    for j in 0..2 {
                        let l = cols.left_act[b].at(j, y);
                        if !l.is_zero() {
                            v[x * 2 + j] = &v[x * 2 + j] - l;
                        }
                    }
                    rel.push_row(v);
                }
            }
        }
        assert_eq!(rel.rank(), 3);
        let t = tensor_over(&rows, &cols).unwrap();
        assert_eq!(t.bim.dim, 1);
        assert!(t.proj.mul(&t.sect).is_identity());
        t.bim.validate().unwrap();
    }

    #[test]
    fn tensor_with_regular_keeps_dimension() {
        let m2 = arc(Algebra::matrix_algebra(2));
        let a = arc(Algebra::product(&Algebra::matrix_algebra(2), &Algebra::matrix_algebra(1)));
        let reg_a = Bimodule::regular(&a);
        let rows = row_module(&m2, 2);
        let t = tensor_over(&reg_a, &reg_a).unwrap();
        assert_eq!(t.bim.dim, a.dim);
        let t2 = tensor_over(&rows, &Bimodule::regular(&m2)).unwrap();
        assert_eq!(t2.bim.dim, rows.dim);
    }

    #[test]
    fn tensor_proj_is_outer_intertwiner() {
        let m2 = arc(Algebra::matrix_algebra(2));
        let t = tensor_over(&row_module(&m2, 2), &column_module(&m2, 2)).unwrap();
        let proj_cell =
            Intertwiner { source: t.ambient.clone(), target: t.bim.clone(), mat: t.proj.clone() };
        proj_cell.validate().unwrap();
        assert_eq!(t.proj.rank(), t.bim.dim);
    }

    #[test]
    fn hom_regular_to_regular_is_left_multiplications() {
        let m2 = arc(Algebra::matrix_algebra(2));
        let reg = Bimodule::regular(&m2);
        let hom = hom_right(&reg, &reg).unwrap();
        assert_eq!(hom.dim(), 4);
        hom.bim.validate().unwrap();
    }

    #[test]
    fn hom_over_rationals_is_full_matrix_space() {
        assert_eq!(hom_right(&q_space(2, "X"), &q_space(3, "Y")).unwrap().dim(), 6);
    }

    #[test]
    fn hom_simple_into_regular() {
        let m2 = arc(Algebra::matrix_algebra(2));
        let hom = hom_right(&row_module(&m2, 2), &Bimodule::regular(&m2)).unwrap();
        assert_eq!(hom.dim(), 2);
    }

    #[test]
    fn dual_module_dimensions() {
        let m2 = arc(Algebra::matrix_algebra(2));
        let reg = Bimodule::regular(&m2);
        let dual = dual_module(&reg);
        assert_eq!(dual.bim.dim, reg.dim);
        assert!(dual.bim.left.same_as(&m2.opposite()));
        dual.bim.validate().unwrap();
        let rows = row_module(&m2, 2);
        assert_eq!(dual_module(&rows).bim.dim, rows.dim);
        let z = Bimodule::zero(m2.clone(), m2.clone());
        assert_eq!(dual_module(&z).bim.dim, 0);
    }

    /// The regular right module, with the left structure forgotten down
    /// to Q: left multiplications are then legitimate endomorphisms.
    fn right_regular(alg: &Arc<Algebra>) -> Bimodule {
        Bimodule {
            left: rational_arc(),
            right: alg.clone(),
            dim: alg.dim,
            left_act: vec![Mat::identity(alg.dim)],
            right_act: (0..alg.dim).map(|i| alg.right_mult_mat(i)).collect(),
            label: format!("{}_right", alg.label),
        }
    }

    #[test]
    fn adjoint_contravariant() {
        let m2 = arc(Algebra::matrix_algebra(2));
        let reg = right_regular(&m2);
        let id = Intertwiner::identity(&reg);
        let adj = intertwiner_adjoint(&id);
        assert!(adj.mat.is_identity());
        adj.validate().unwrap();
        let zero = Intertwiner::zero(&reg, &reg);
        assert!(intertwiner_adjoint(&zero).mat.is_zero());
        // (g ∘ f)* = f* ∘ g* for left multiplications as endomorphisms.
        let f = Intertwiner {
            source: reg.clone(),
            target: reg.clone(),
            mat: m2.left_mult_mat(1).add(&m2.left_mult_mat(0)),
        };
        let g = Intertwiner {
            source: reg.clone(),
            target: reg.clone(),
            mat: m2.left_mult_mat(3).add(&m2.left_mult_mat(2).scale(&rat(2))),
        };
        f.validate().unwrap();
        g.validate().unwrap();
        let gf = Intertwiner { source: reg.clone(), target: reg.clone(), mat: g.mat.mul(&f.mat) };
        let lhs = intertwiner_adjoint(&gf);
        let rhs_mat = intertwiner_adjoint(&f).mat.mul(&intertwiner_adjoint(&g).mat);
        assert_eq!(lhs.mat, rhs_mat);
    }

    #[test]
    fn braiding_over_rationals_is_swap() {
        let b = braid_iso(&q_space(2, "Q^2"), &q_space(3, "Q^3")).unwrap();
        for i in 0..2 {
            for j in 0..3 {
                assert!(b.mat.at(j * 2 + i, i * 3 + j).is_one());
            }
        }
        b.as_intertwiner().validate().unwrap();
    }

    #[test]
    fn braiding_involutive() {
        let m2 = arc(Algebra::matrix_algebra(2));
        let rows = row_module(&m2, 2);
        let cols = column_module(&m2, 2);
        let fwd = braid_iso(&rows, &cols).unwrap();
        let back = braid_iso(&as_right_over_op(&cols), &as_right_over_op(&rows)).unwrap();
        assert!(back.mat.mul(&fwd.mat).is_identity());
        assert_eq!(fwd.mat.rank(), fwd.src.bim.dim);
    }

    #[test]
    fn adjoint_iso_currying_dimensions() {
        let iso = adjoint_iso(&q_space(2, "X"), &q_space(3, "M"), &q_space(5, "Y")).unwrap();
        assert_eq!(iso.lhs.dim(), 30);
        assert_eq!(iso.rhs.dim(), 30);
        assert!(iso.mat.is_invertible());
    }

    #[test]
    fn adjoint_iso_unit_slot() {
        // X = A: both sides are hom_B(M, Y).
        let m2 = arc(Algebra::matrix_algebra(2));
        let rows = row_module(&m2, 2);
        let q = rational_arc();
        let xa = Bimodule::regular(&q);
        let y = Bimodule::regular(&m2);
        let iso = adjoint_iso(&xa, &rows, &y).unwrap();
        assert_eq!(iso.lhs.dim(), iso.rhs.dim());
        assert!(iso.mat.is_invertible());
    }

    #[test]
    fn double_dual_on_regular_and_trivial() {
        let m2 = arc(Algebra::matrix_algebra(2));
        let reg = Bimodule::regular(&m2);
        let psi = double_dual_iso(&reg).unwrap();
        assert!(psi.is_invertible());
        psi.validate().unwrap();
        let q = rational_arc();
        let psi_q = double_dual_iso(&Bimodule::regular(&q)).unwrap();
        assert!(psi_q.mat.is_identity());
        assert!(matches!(
            double_dual_iso(&Bimodule::regular(&arc(Algebra::dual_numbers()))),
            Err(Error::NotSemisimple(_))
        ));
    }

    #[test]
    fn double_dual_naturality() {
        let m2 = arc(Algebra::matrix_algebra(2));
        let reg = right_regular(&m2);
        let f = Intertwiner {
            source: reg.clone(),
            target: reg.clone(),
            mat: m2.left_mult_mat(0).add(&m2.left_mult_mat(3).scale(&rat(3))),
        };
        f.validate().unwrap();
        let psi = double_dual_iso(&reg).unwrap();
        let ff = intertwiner_adjoint(&intertwiner_adjoint(&f));
        assert_eq!(psi.mat.mul(&f.mat), ff.mat.mul(&psi.mat));
    }

    #[test]
    fn tensor_hom_with_regular_p() {
        let m2 = arc(Algebra::matrix_algebra(2));
        let reg = Bimodule::regular(&m2);
        let rows = row_module(&m2, 2);
        let iso = tensor_hom_iso(&rows, &reg).unwrap();
        assert_eq!(iso.lhs.bim.dim, iso.rhs.dim());
        assert_eq!(iso.rhs.dim(), rows.dim);
        assert!(iso.mat.is_invertible());
        let iso_q = tensor_hom_iso(&q_space(2, "X"), &q_space(3, "P")).unwrap();
        assert_eq!(iso_q.lhs.bim.dim, 6);
        assert!(iso_q.mat.is_invertible());
    }

    #[test]
    fn bimodule_and_intertwiner_json_round_trip() {
        let m2 = arc(Algebra::matrix_algebra(2));
        let rows = row_module(&m2, 2);
        let json = serde_json::to_string(&rows).unwrap();
        let back: Bimodule = serde_json::from_str(&json).unwrap();
        assert_eq!(rows, back);
        assert_eq!(json, serde_json::to_string(&back).unwrap());
        let cell = Intertwiner {
            source: rows.clone(),
            target: rows.clone(),
            mat: Mat::identity(2).scale(&crate::scalar::ratio(2, 3)),
        };
        let json = serde_json::to_string(&cell).unwrap();
        let back: Intertwiner = serde_json::from_str(&json).unwrap();
        assert_eq!(cell, back);
        // corrupted cells are rejected on load
        let mut bad = cell.clone();
        bad.mat.set(0, 1, crate::scalar::rat(1));
        let json = serde_json::to_string(&bad).unwrap();
        assert!(serde_json::from_str::<Intertwiner>(&json).is_err());
    }

    #[test]
    fn intertwiner_space_of_regular() {
        let m2 = arc(Algebra::matrix_algebra(2));
        let reg = Bimodule::regular(&m2);
        // (A,A)-endomorphisms of the regular bimodule form the center.
        let basis = intertwiner_space(&reg, &reg);
        assert_eq!(basis.rows(), 1);
    }
}
