use rayon::prelude::*;

use super::{Chain, Space, SpaceKind, Word};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::scalar::{collect_sparse, Q};

/// Right action `[w, e_x] = −ρ(e_x) w` on a single word, expanded factor by
/// factor (derivation rule). The output is not yet canonical.
fn act_word(space: &Space, x: usize, word: &[u32], mut emit: impl FnMut(Word, Q)) {
    for pos in 0..word.len() {
        let rep = if space.kind() == SpaceKind::Mixed && pos == 0 { space.lead().unwrap() } else { space.base() };
        for (r, c) in rep.image(x, word[pos] as usize) {
            let mut w = word.to_vec();
            w[pos] = *r as u32;
            emit(w, -c.clone());
        }
    }
}

/// `[c, e_x]` for a chain in any space (matrix-free).
pub fn act(x: usize, chain: &Chain) -> Result<Chain> {
    let space = chain.space();
    if x >= space.generators() {
        return Err(Error::GeneratorOutOfRange { index: x, count: space.generators() });
    }
    let mut out = Chain::zero(space.clone());
    for (w, c) in chain.terms() {
        let mut err = None;
        act_word(space, x, w, |word, v| {
            if let Err(e) = out.add_term(word, c * v) {
                err = Some(e);
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(out)
}

fn expect_kind(chain: &Chain, kind: SpaceKind) -> Result<()> {
    if chain.space().kind() != kind {
        return Err(Error::SpaceMismatch { expected: format!("{kind:?} space"), found: chain.space().to_string() });
    }
    Ok(())
}

/// `[α_1∧…∧α_k, x] = Σ_i α_1∧…∧[α_i, x]∧…∧α_k`.
pub fn act_wedge(x: usize, chain: &Chain) -> Result<Chain> {
    expect_kind(chain, SpaceKind::Wedge)?;
    act(x, chain)
}

/// `[h⊗α_1∧…∧α_k, x] = [h,x]⊗α_1∧…∧α_k + Σ_i h⊗α_1∧…∧[α_i,x]∧…∧α_k`.
pub fn act_mixed(x: usize, chain: &Chain) -> Result<Chain> {
    expect_kind(chain, SpaceKind::Mixed)?;
    act(x, chain)
}

/// `[h_1⊗…⊗h_k, x] = Σ_i h_1⊗…⊗[h_i,x]⊗…⊗h_k`.
pub fn act_tensor(x: usize, chain: &Chain) -> Result<Chain> {
    expect_kind(chain, SpaceKind::Tensor)?;
    act(x, chain)
}

fn word_column(space: &Space, x: usize, word: &[u32]) -> Vec<(usize, Q)> {
    let mut single = Chain::zero(space.clone());
    act_word(space, x, word, |w, v| {
        single.add_term(w, v).expect("action stays in space");
    });
    collect_sparse(single.terms().iter().map(|(w, c)| (space.rank(w), c.clone())))
}

/// Assembled matrix of `w ↦ [w, e_x]` in the rank-ordered basis.
pub fn action_matrix(space: &Space, x: usize) -> Result<SparseMatrix<Q>> {
    if x >= space.generators() {
        return Err(Error::GeneratorOutOfRange { index: x, count: space.generators() });
    }
    let dim = space.dim();
    let columns: Vec<_> = (0..dim).into_par_iter().map(|r| word_column(space, x, &space.unrank(r))).collect();
    Ok(SparseMatrix::from_columns(dim, columns))
}

/// The matrices for `generators` stacked vertically; its kernel is the
/// subspace annihilated by all of them.
pub fn stacked_action_matrix(space: &Space, generators: &[usize]) -> Result<SparseMatrix<Q>> {
    let blocks = generators.iter().map(|&x| action_matrix(space, x)).collect::<Result<Vec<_>>>()?;
    if blocks.is_empty() {
        return Ok(SparseMatrix::zeros(0, space.dim()));
    }
    Ok(SparseMatrix::stack(&blocks))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::liealg::{build_affine, build_so, BasisLabel, Representation, Signature};
    use crate::scalar::qi;

    fn setup(p: usize, q: usize) -> (crate::liealg::LieAlgebra, Arc<Representation>, Arc<Representation>) {
        let sig = Signature::new(p, q).unwrap();
        let h = build_affine(sig);
        let adj = Arc::new(Representation::adjoint(&h));
        let trans = Arc::new(Representation::translations_of_affine(&h));
        (h, adj, trans)
    }

    #[test]
    fn wedge_boost_example() {
        let (h, _, i4) = setup(2, 2);
        let y13 = h.index_of(&BasisLabel::BoostY(1, 3)).unwrap();
        let w = Chain::from_terms(Space::wedge(i4.clone(), 2), [(vec![0, 1], qi(1))]).unwrap();
        let out = act_wedge(y13, &w).unwrap();
        let expected = Chain::from_terms(Space::wedge(i4, 2), [(vec![1, 2], qi(-1))]).unwrap();
        assert_eq!(out, expected);
    }

    #[test]
    fn translations_act_trivially_on_translations() {
        let (_, _, i4) = setup(2, 2);
        let w = Chain::from_terms(Space::wedge(i4, 2), [(vec![0, 3], qi(1))]).unwrap();
        for x in 0..4 {
            assert!(act_wedge(x, &w).unwrap().is_zero());
        }
    }

    #[test]
    fn volume_form_is_rotation_invariant() {
        let (h, _, i4) = setup(2, 2);
        let x12 = h.index_of(&BasisLabel::RotationX(1, 2)).unwrap();
        let vol = Chain::from_terms(Space::wedge(i4, 4), [(vec![0, 1, 2, 3], qi(1))]).unwrap();
        assert!(act_wedge(x12, &vol).unwrap().is_zero());
    }

    #[test]
    fn tensor_rotation_example() {
        let (h, adj, _) = setup(2, 2);
        let x12 = h.index_of(&BasisLabel::RotationX(1, 2)).unwrap();
        let t = Chain::from_terms(Space::tensor(adj.clone(), 2), [(vec![0, 0], qi(1))]).unwrap();
        let out = act_tensor(x12, &t).unwrap();
        let expected = Chain::from_terms(Space::tensor(adj, 2), [(vec![1, 0], qi(-1)), (vec![0, 1], qi(-1))]).unwrap();
        assert_eq!(out, expected);
    }

    #[test]
    fn mixed_repeated_factor_vanishes() {
        let sig = Signature::new(3, 1).unwrap();
        let so = build_so(sig);
        let adj = Arc::new(Representation::adjoint(&so));
        let std = Arc::new(Representation::standard(sig));
        let x12 = so.index_of(&BasisLabel::RotationX(1, 2)).unwrap();
        let c = Chain::from_terms(Space::mixed(adj, std, 2).unwrap(), [(vec![x12 as u32, 0, 1], qi(1))]).unwrap();
        assert!(act_mixed(x12, &c).unwrap().is_zero());
    }

    #[test]
    fn kind_and_range_errors() {
        let (_, adj, i4) = setup(2, 2);
        let t = Chain::from_terms(Space::tensor(adj, 1), [(vec![0], qi(1))]).unwrap();
        assert!(matches!(act_wedge(0, &t), Err(Error::SpaceMismatch { .. })));
        let w = Chain::zero(Space::wedge(i4, 1));
        assert!(matches!(act(99, &w), Err(Error::GeneratorOutOfRange { .. })));
    }

    #[test]
    fn assembled_matches_matrix_free() {
        let (h, adj, i4) = setup(2, 1);
        let spaces = [Space::tensor(adj.clone(), 2), Space::wedge(i4.clone(), 2), Space::mixed(adj, i4, 1).unwrap()];
        for s in &spaces {
            for x in 0..h.dim() {
                let m = action_matrix(s, x).unwrap();
                for r in 0..s.dim().min(20) {
                    let c = Chain::from_vector(s.clone(), &[(r, qi(1))]);
                    assert_eq!(act(x, &c).unwrap().to_vector(), m.mul_vec(&[(r, qi(1))]));
                }
            }
        }
    }
}
