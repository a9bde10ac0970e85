//! The dualization pseudofunctor on the semisimple part of the
//! bicategory: opposite algebras on objects, dual modules on 1-cells,
//! adjoint maps on 2-cells, together with its coherence cells, the
//! bidual comparison and the modification relating them — all realised
//! as explicit invertible intertwiners and verified exactly.

use crate::algebra::Algebra;
use crate::bicategory::{
    associator, hcomp2, left_unitor, paste, right_adjoint, right_unitor, vcomp2,
};
use crate::bimodule::{
    adjoint_iso, braid_iso, double_dual_iso, dual_module, intertwiner_adjoint, tensor_over,
    Bimodule, Intertwiner,
};
use crate::corpus::{random_bimodule, random_intertwiner, Corpus};
use crate::error::{Error, Result};
use crate::report::CheckRecord;
use crate::suite::SuiteCtx;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn require_semisimple(alg: &Algebra) -> Result<()> {
    let (ss, _) = alg.is_semisimple();
    if ss {
        Ok(())
    } else {
        Err(Error::NotSemisimple(alg.label.clone()))
    }
}

/// The dual 1-cell `M°` of `M: A → B`, an `(A°, B°)`-bimodule.
pub fn dual_cell(m: &Bimodule) -> Bimodule {
    dual_module(m).bim
}

/// Composition coherence cell of dualization:
/// `χ_{M,N} : (M ⊗_B N)° → M° ⊗_{B°} N°`, assembled from the adjunction
/// isomorphism, the inverse tensor-hom comparison, and the braiding.
pub fn comp_cell(m: &Bimodule, n: &Bimodule) -> Result<Intertwiner> {
    require_semisimple(&m.left)?;
    require_semisimple(&m.right)?;
    require_semisimple(&n.right)?;
    if !m.right.same_as(&n.left) {
        return Err(Error::ObjectMismatch("composition cell needs composable cells".into()));
    }
    let c_reg = Bimodule::regular(&n.right);
    // hom_C(M ⊗_B N, C) ≅ hom_B(M, hom_C(N, C))
    let adj = adjoint_iso(m, n, &c_reg)?;
    // hom_C(N,C) ⊗_B hom_B(M,B) ≅ hom_B(M, hom_C(N,C))
    let th = crate::bimodule::tensor_hom_iso(&adj.hom_my.bim, m)?;
    // hom_C(N,C) ⊗_B hom_B(M,B) ≅ M° ⊗_{B°} N°
    let br = braid_iso(&adj.hom_my.bim, &th.dual_p.bim)?;
    assert_eq!(br.src.bim, th.lhs.bim, "braiding source must match tensor-hom lhs");
    let mat = br.mat.mul(&th.mat.inverse()?).mul(&adj.mat);

    let t = tensor_over(m, n)?;
    let source = dual_module(&t.bim).bim;
    let dual_m = dual_module(m);
    let dual_n = dual_module(n);
    let target = tensor_over(&dual_m.bim, &dual_n.bim)?.bim;
    assert_eq!(target, br.tgt.bim, "dual composite bases must agree");
    let cell = Intertwiner { source, target, mat };
    cell.validate()?;
    if !cell.is_invertible() {
        return Err(Error::Invalid(format!(
            "composition cell for `{}`, `{}` is singular",
            m.label, n.label
        )));
    }
    Ok(cell)
}

/// Unit coherence cell `υ_A : (1_A)° → 1_{A°}`, the evaluation
/// `f ↦ f(1)` from `hom_A(A, A)` to the opposite algebra. The map is
/// checked to be multiplicative: `(f ∘ g)(1) = f(1) · g(1)`.
pub fn unit_cell(alg: &Arc<Algebra>) -> Result<Intertwiner> {
    let reg = Bimodule::regular(alg);
    let dual = dual_module(&reg);
    let op = Arc::new(alg.opposite());
    let target = Bimodule::regular(&op);
    let mut mat = crate::mat::Mat::zeros(alg.dim, dual.dim());
    for j in 0..dual.dim() {
        for (r, v) in dual.element(j).mul_vec(&alg.unit).into_iter().enumerate() {
            mat.set(r, j, v);
        }
    }
    for i in 0..dual.dim() {
        for j in 0..dual.dim() {
            let lhs = dual.element(i).mul(&dual.element(j)).mul_vec(&alg.unit);
            let rhs = alg.multiply(
                &dual.element(i).mul_vec(&alg.unit),
                &dual.element(j).mul_vec(&alg.unit),
            );
            if lhs != rhs {
                return Err(Error::Invalid(format!(
                    "evaluation at the unit is not multiplicative for `{}`",
                    alg.label
                )));
            }
        }
    }
    let cell = Intertwiner { source: dual.bim, target, mat };
    cell.validate()?;
    if !cell.is_invertible() {
        return Err(Error::Invalid(format!("unit cell for `{}` is singular", alg.label)));
    }
    Ok(cell)
}

/// Bidual comparison cell `𝔶_M : M ⊗_B B → A ⊗_A M°°`, the pasting of
/// the left unitor, the double-dual comparison and the inverse right
/// unitor. Fills the naturality square between the identity and the
/// double dual.
pub fn bidual_cell(m: &Bimodule) -> Result<Intertwiner> {
    require_semisimple(&m.left)?;
    require_semisimple(&m.right)?;
    let psi = double_dual_iso(m)?;
    let lu = left_unitor(m);
    let ru_inv = right_unitor(&psi.target).inverse()?;
    Ok(paste(&[&lu, &psi, &ru_inv]))
}

/// The modification component `ζ_A : 𝔶_{A°} → (𝔶_A)°`, the inverse of
/// the unit coherence cell typed between the relevant 1-cells.
pub fn zeta(alg: &Arc<Algebra>) -> Result<Intertwiner> {
    require_semisimple(alg)?;
    unit_cell(alg)?.inverse()
}

/// Compositor of the double-dual pseudofunctor:
/// `(M ⊗_B N)°° → M°° ⊗_B N°°`, built out of two composition cells.
pub fn double_dual_compositor(m: &Bimodule, n: &Bimodule) -> Result<Intertwiner> {
    let chi = comp_cell(m, n)?;
    let dual_m = dual_cell(m);
    let dual_n = dual_cell(n);
    let chi_duals = comp_cell(&dual_m, &dual_n)?;
    let lift = intertwiner_adjoint(&chi).inverse()?;
    Ok(vcomp2(&lift, &chi_duals))
}

/// Unit constraint of the double-dual pseudofunctor:
/// `1_A → (1_A)°°`, `υ_{A°}⁻¹` followed by the dual of `υ_A`.
pub fn double_dual_unit_constraint(alg: &Arc<Algebra>) -> Result<Intertwiner> {
    let op = Arc::new(alg.opposite());
    let first = unit_cell(&op)?.inverse()?;
    let second = intertwiner_adjoint(&unit_cell(alg)?);
    Ok(vcomp2(&first, &second))
}

fn record(
    checks: &mut Vec<CheckRecord>,
    id: String,
    law: &str,
    instance: String,
    dims: Vec<usize>,
    ok: bool,
    detail: &str,
) {
    checks.push(CheckRecord::verdict(id, law, instance, dims, ok, detail));
}

/// Pseudofunctor axioms for dualization, checked exactly over corpus
/// samples: naturality of the composition cell in both slots, the
/// cocycle condition over composable triples, unit compatibility, and
/// contravariant functoriality on 2-cells.
pub fn verify_pseudofunctor(corpus: &Corpus, ctx: &SuiteCtx) -> Vec<CheckRecord> {
    let mut checks = Vec::new();
    let mut rng = ctx.rng("duality-pseudofunctor");
    let algebras = corpus.semisimple();
    if algebras.is_empty() {
        return checks;
    }
    let sample_alg = |rng: &mut ChaCha8Rng| algebras[rng.gen_range(0..algebras.len())].clone();

    for k in 0..ctx.samples {
        // Composable pair with a couple of 2-cells on each leg.
        let a = sample_alg(&mut rng);
        let b = sample_alg(&mut rng);
        let c = sample_alg(&mut rng);
        let m = random_bimodule(&a, &b, ctx.max_dim, &format!("m{k}"), &mut rng);
        let n = random_bimodule(&b, &c, ctx.max_dim, &format!("n{k}"), &mut rng);
        let instance = format!("{} -> {} -> {} (dims {}, {})", a.label, b.label, c.label, m.dim, n.dim);

        let chi = match comp_cell(&m, &n) {
            Ok(cell) => ctx.mutated("duality", "comp-cell", cell),
            Err(e) => {
                checks.push(CheckRecord::fail(
                    format!("comp-cell[{k}]"),
                    "dual composition cell",
                    instance,
                    vec![m.dim, n.dim],
                    e.to_string(),
                ));
                continue;
            }
        };
        record(
            &mut checks,
            format!("comp-cell-invertible[{k}]"),
            "dual composition cell invertible intertwiner",
            instance.clone(),
            vec![chi.source.dim],
            chi.validate().is_ok() && chi.is_invertible(),
            "cell fails validator or is singular",
        );

        // Naturality in the first slot.
        let f = random_intertwiner(&m, &m, &mut rng);
        let dual_n_bim = dual_cell(&n);
        let lhs = vcomp2(&intertwiner_adjoint(&hcomp2(&f, &Intertwiner::identity(&n)).unwrap()), &chi);
        let rhs = vcomp2(&chi, &hcomp2(&intertwiner_adjoint(&f), &Intertwiner::identity(&dual_n_bim)).unwrap());
        record(
            &mut checks,
            format!("comp-cell-natural-left[{k}]"),
            "dual composition cell natural in the first slot",
            instance.clone(),
            vec![m.dim, n.dim],
            lhs.mat == rhs.mat,
            "naturality square does not commute",
        );

        // Naturality in the second slot.
        let g = random_intertwiner(&n, &n, &mut rng);
        let dual_m_bim = dual_cell(&m);
        let lhs2 = vcomp2(&intertwiner_adjoint(&hcomp2(&Intertwiner::identity(&m), &g).unwrap()), &chi);
        let rhs2 = vcomp2(&chi, &hcomp2(&Intertwiner::identity(&dual_m_bim), &intertwiner_adjoint(&g)).unwrap());
        record(
            &mut checks,
            format!("comp-cell-natural-right[{k}]"),
            "dual composition cell natural in the second slot",
            instance.clone(),
            vec![m.dim, n.dim],
            lhs2.mat == rhs2.mat,
            "naturality square does not commute",
        );

        // Contravariant functoriality on 2-cells.
        let f2 = random_intertwiner(&m, &m, &mut rng);
        let lhs3 = intertwiner_adjoint(&vcomp2(&f, &f2));
        let rhs3 = vcomp2(&intertwiner_adjoint(&f2), &intertwiner_adjoint(&f));
        record(
            &mut checks,
            format!("two-cell-contravariance[{k}]"),
            "duals reverse vertical composition",
            instance.clone(),
            vec![m.dim],
            lhs3.mat == rhs3.mat,
            "(g∘f)* differs from f*∘g*",
        );

        // Unit compatibility on both sides.
        let chi_right = comp_cell(&m, &Bimodule::regular(&b)).unwrap();
        let path = paste(&[
            &chi_right,
            &hcomp2(&Intertwiner::identity(&dual_m_bim), &unit_cell(&b).unwrap()).unwrap(),
            &left_unitor(&dual_m_bim),
        ]);
        let direct = intertwiner_adjoint(&left_unitor(&m).inverse().unwrap());
        record(
            &mut checks,
            format!("unit-compat-right[{k}]"),
            "composition cell compatible with the right unit",
            instance.clone(),
            vec![m.dim],
            path.mat == direct.mat,
            "unit pasting differs from the dualized unitor",
        );
        let chi_left = comp_cell(&Bimodule::regular(&a), &m).unwrap();
        let path_l = paste(&[
            &chi_left,
            &hcomp2(&unit_cell(&a).unwrap(), &Intertwiner::identity(&dual_m_bim)).unwrap(),
            &right_unitor(&dual_m_bim),
        ]);
        let direct_l = intertwiner_adjoint(&right_unitor(&m).inverse().unwrap());
        record(
            &mut checks,
            format!("unit-compat-left[{k}]"),
            "composition cell compatible with the left unit",
            instance.clone(),
            vec![m.dim],
            path_l.mat == direct_l.mat,
            "unit pasting differs from the dualized unitor",
        );

        // Dimension sanity.
        record(
            &mut checks,
            format!("dual-dims[{k}]"),
            "duals preserve dimensions",
            instance.clone(),
            vec![m.dim, n.dim],
            dual_m_bim.dim == m.dim
                && dual_n_bim.dim == n.dim
                && chi.source.dim == chi.target.dim,
            "dimension mismatch under dualization",
        );
    }

    // Cocycle condition over composable triples.
    for k in 0..ctx.samples.min(6) {
        let a = sample_alg(&mut rng);
        let b = sample_alg(&mut rng);
        let c = sample_alg(&mut rng);
        let d = sample_alg(&mut rng);
        let max_leg = ctx.max_dim.min(5);
        let m = random_bimodule(&a, &b, max_leg, &format!("cm{k}"), &mut rng);
        let n = random_bimodule(&b, &c, max_leg, &format!("cn{k}"), &mut rng);
        let p = random_bimodule(&c, &d, max_leg, &format!("cp{k}"), &mut rng);
        let instance =
            format!("{}->{}->{}->{} (dims {},{},{})", a.label, b.label, c.label, d.label, m.dim, n.dim, p.dim);
        let t_mn = tensor_over(&m, &n).unwrap();
        let t_np = tensor_over(&n, &p).unwrap();
        let dual_p_bim = dual_cell(&p);
        let dual_m_bim = dual_cell(&m);
        let path1 = paste(&[
            &intertwiner_adjoint(&associator(&m, &n, &p).unwrap()),
            &comp_cell(&t_mn.bim, &p).unwrap(),
            &hcomp2(&comp_cell(&m, &n).unwrap(), &Intertwiner::identity(&dual_p_bim)).unwrap(),
            &associator(&dual_m_bim, &dual_cell(&n), &dual_p_bim).unwrap(),
        ]);
        let path2 = paste(&[
            &comp_cell(&m, &t_np.bim).unwrap(),
            &hcomp2(&Intertwiner::identity(&dual_m_bim), &comp_cell(&n, &p).unwrap()).unwrap(),
        ]);
        record(
            &mut checks,
            format!("comp-cell-cocycle[{k}]"),
            "composition cell cocycle over triples",
            instance,
            vec![m.dim, n.dim, p.dim],
            path1.source == path2.source && path1.target == path2.target && path1.mat == path2.mat,
            "the two pasted routes differ",
        );
    }
    checks
}

/// The weak-involution laws: invertibility of every ζ component, the
/// compatibility equality between `id ⊗ ζ_{A°}` and the pasted bidual
/// route, pseudonaturality of the bidual comparison (unit, composition
/// and 2-cell axioms), and its adjoint-equivalence completion.
pub fn verify_involution(corpus: &Corpus, ctx: &SuiteCtx) -> Vec<CheckRecord> {
    let mut checks = Vec::new();
    let mut rng = ctx.rng("duality-involution");
    let algebras = corpus.semisimple();

    for (i, alg) in algebras.iter().enumerate() {
        let reg = Bimodule::regular(alg);
        let instance = alg.label.clone();

        // ζ is an invertible intertwiner.
        match zeta(alg) {
            Ok(z) => {
                let z = ctx.mutated("duality", "zeta", z);
                record(
                    &mut checks,
                    format!("zeta[{i}]"),
                    "bidual modification component invertible intertwiner",
                    instance.clone(),
                    vec![alg.dim],
                    z.validate().is_ok() && z.is_invertible(),
                    "zeta fails validator or is singular",
                );
            }
            Err(e) => checks.push(CheckRecord::fail(
                format!("zeta[{i}]"),
                "bidual modification component invertible intertwiner",
                instance.clone(),
                vec![alg.dim],
                e.to_string(),
            )),
        }

        // The compatibility equality of 2-morphisms at A.
        let ok = (|| -> Result<bool> {
            let op = Arc::new(alg.opposite());
            let lhs = hcomp2(&Intertwiner::identity(&reg), &zeta(&op)?)?;
            let rhs = vcomp2(
                &bidual_cell(&reg)?,
                &hcomp2(&Intertwiner::identity(&reg), &intertwiner_adjoint(&zeta(alg)?))?,
            );
            Ok(lhs.source == rhs.source && lhs.target == rhs.target && lhs.mat == rhs.mat)
        })();
        match ok {
            Ok(ok) => record(
                &mut checks,
                format!("bidual-compat[{i}]"),
                "bidual modification compatibility equality",
                instance.clone(),
                vec![alg.dim],
                ok,
                "the two pasted 2-morphisms differ",
            ),
            Err(e) => checks.push(CheckRecord::fail(
                format!("bidual-compat[{i}]"),
                "bidual modification compatibility equality",
                instance.clone(),
                vec![alg.dim],
                e.to_string(),
            )),
        }

        // Adjoint-equivalence completion of the bidual component.
        let adj_ok = right_adjoint(&reg)
            .map(|adj| adj.unit.is_invertible() && adj.counit.is_invertible())
            .unwrap_or(false);
        record(
            &mut checks,
            format!("bidual-adjoint-equivalence[{i}]"),
            "bidual component extends to an adjoint equivalence",
            instance.clone(),
            vec![alg.dim],
            adj_ok,
            "unit/counit not invertible or triangles fail",
        );

        // Pseudonaturality unit axiom at A.
        let unit_ok = (|| -> Result<bool> {
            let lhs = bidual_cell(&reg)?;
            let iota2 = double_dual_unit_constraint(alg)?;
            let rhs = paste(&[
                &right_unitor(&reg),
                &left_unitor(&reg).inverse()?,
                &hcomp2(&Intertwiner::identity(&reg), &iota2)?,
            ]);
            Ok(lhs.source == rhs.source && lhs.target == rhs.target && lhs.mat == rhs.mat)
        })();
        match unit_ok {
            Ok(ok) => record(
                &mut checks,
                format!("bidual-unit-axiom[{i}]"),
                "bidual comparison unit axiom",
                instance.clone(),
                vec![alg.dim],
                ok,
                "unit pasting differs",
            ),
            Err(e) => checks.push(CheckRecord::fail(
                format!("bidual-unit-axiom[{i}]"),
                "bidual comparison unit axiom",
                instance.clone(),
                vec![alg.dim],
                e.to_string(),
            )),
        }
    }

    // Pseudonaturality: 2-cell axiom and composition axiom on samples.
    if !algebras.is_empty() {
        let sample_alg = |rng: &mut ChaCha8Rng| algebras[rng.gen_range(0..algebras.len())].clone();
        for k in 0..ctx.samples.min(6) {
            let a = sample_alg(&mut rng);
            let b = sample_alg(&mut rng);
            let max_leg = ctx.max_dim.min(5);
            let m = random_bimodule(&a, &b, max_leg, &format!("ym{k}"), &mut rng);
            let instance = format!("{} -> {} (dim {})", a.label, b.label, m.dim);

            let cell_ok = (|| -> Result<bool> {
                let y = bidual_cell(&m)?;
                Ok(y.validate().is_ok() && y.is_invertible())
            })();
            record(
                &mut checks,
                format!("bidual-cell[{k}]"),
                "bidual comparison cell invertible intertwiner",
                instance.clone(),
                vec![m.dim],
                cell_ok.unwrap_or(false),
                "cell fails validator or is singular",
            );

            // 2-cell naturality.
            let nat_ok = (|| -> Result<bool> {
                let h = random_intertwiner(&m, &m, &mut rng);
                let hdd = intertwiner_adjoint(&intertwiner_adjoint(&h));
                let lhs = vcomp2(&bidual_cell(&m)?, &hcomp2(&Intertwiner::identity(&Bimodule::regular(&a)), &hdd)?);
                let rhs = vcomp2(&hcomp2(&h, &Intertwiner::identity(&Bimodule::regular(&b)))?, &bidual_cell(&m)?);
                Ok(lhs.mat == rhs.mat)
            })();
            record(
                &mut checks,
                format!("bidual-2cell-natural[{k}]"),
                "bidual comparison natural against 2-cells",
                instance.clone(),
                vec![m.dim],
                nat_ok.unwrap_or(false),
                "naturality square fails",
            );

            // Composition axiom over a composable pair.
            let c = sample_alg(&mut rng);
            let n = random_bimodule(&b, &c, max_leg, &format!("yn{k}"), &mut rng);
            let comp_ok = (|| -> Result<bool> {
                let t = tensor_over(&m, &n)?;
                let lhs = bidual_cell(&t.bim)?;
                let m_dd = double_dual_iso(&m)?.target;
                let n_dd = double_dual_iso(&n)?.target;
                let phi = double_dual_compositor(&m, &n)?;
                let rhs = paste(&[
                    &associator(&m, &n, &Bimodule::regular(&c))?,
                    &hcomp2(&Intertwiner::identity(&m), &bidual_cell(&n)?)?,
                    &associator(&m, &Bimodule::regular(&b), &n_dd)?.inverse()?,
                    &hcomp2(&bidual_cell(&m)?, &Intertwiner::identity(&n_dd))?,
                    &associator(&Bimodule::regular(&a), &m_dd, &n_dd)?,
                    &hcomp2(&Intertwiner::identity(&Bimodule::regular(&a)), &phi.inverse()?)?,
                ]);
                Ok(lhs.source == rhs.source && lhs.target == rhs.target && lhs.mat == rhs.mat)
            })();
            record(
                &mut checks,
                format!("bidual-composition-axiom[{k}]"),
                "bidual comparison composition axiom",
                format!("{instance} then -> {} (dim {})", c.label, n.dim),
                vec![m.dim, n.dim],
                comp_ok.unwrap_or(false),
                "composition pasting differs",
            );
        }
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::test_fixtures::q_space;
    use crate::bimodule::Bimodule;

    fn arc(a: Algebra) -> Arc<Algebra> {
        Arc::new(a)
    }

    #[test]
    fn unit_cell_trivial_and_matrix() {
        let q = arc(Algebra::rational());
        let cell = unit_cell(&q).unwrap();
        assert!(cell.mat.is_identity());
        let m2 = arc(Algebra::matrix_algebra(2));
        let cell = unit_cell(&m2).unwrap();
        assert_eq!((cell.mat.rows(), cell.mat.cols()), (4, 4));
        assert!(cell.is_invertible());
        // The identity endomorphism maps to the unit of the opposite.
        let dual = crate::bimodule::dual_module(&Bimodule::regular(&m2));
        let id_coords = dual.coords_of(&crate::mat::Mat::identity(4));
        let image = cell.mat.mul_vec(&id_coords);
        assert_eq!(image, m2.unit);
    }

    #[test]
    fn zeta_inverts_the_unit_cell() {
        for alg in [
            Algebra::rational(),
            Algebra::matrix_algebra(2),
            Algebra::group_algebra_elementary_2(1),
        ] {
            let a = arc(alg);
            let z = zeta(&a).unwrap();
            let u = unit_cell(&a).unwrap();
            assert!(vcomp2(&z, &u).mat.is_identity());
            z.validate().unwrap();
        }
        assert!(matches!(
            zeta(&arc(Algebra::dual_numbers())),
            Err(Error::NotSemisimple(_))
        ));
    }

    #[test]
    fn comp_cell_on_trivial_pair() {
        let q = arc(Algebra::rational());
        let reg = Bimodule::regular(&q);
        let chi = comp_cell(&reg, &reg).unwrap();
        assert_eq!((chi.mat.rows(), chi.mat.cols()), (1, 1));
        assert!(chi.mat.is_identity());
        // dimensions of both sides always agree
        let m2 = arc(Algebra::matrix_algebra(2));
        let rows = crate::bimodule::test_fixtures::row_module(&m2, 2);
        let chi2 = comp_cell(&rows, &Bimodule::regular(&m2)).unwrap();
        assert_eq!(chi2.source.dim, chi2.target.dim);
        assert!(chi2.is_invertible());
    }

    #[test]
    fn comp_cell_requires_semisimple_objects() {
        let dn = arc(Algebra::dual_numbers());
        let reg = Bimodule::regular(&dn);
        assert!(matches!(comp_cell(&reg, &reg), Err(Error::NotSemisimple(_))));
    }

    #[test]
    fn bidual_cell_trivial() {
        let cell = bidual_cell(&q_space(1, "Q")).unwrap();
        assert!(cell.mat.is_identity());
        let m2 = arc(Algebra::matrix_algebra(2));
        let y = bidual_cell(&Bimodule::regular(&m2)).unwrap();
        y.validate().unwrap();
        assert!(y.is_invertible());
        assert_eq!(y.source.dim, y.target.dim);
    }

    #[test]
    fn double_dual_unit_constraint_invertible() {
        for alg in [Algebra::rational(), Algebra::matrix_algebra(2)] {
            let a = arc(alg);
            let iota = double_dual_unit_constraint(&a).unwrap();
            iota.validate().unwrap();
            assert!(iota.is_invertible());
            // it lands in the double dual of the regular bimodule
            assert_eq!(iota.target.dim, a.dim);
        }
    }
}
