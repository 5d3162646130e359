//! Semi-simplicial nerves (full and reduced), Grothendieck totals, the four
//! nerve constructions with their projections, and the `ξ` zigzag.

mod grothendieck;
mod package;
mod simplicial;
mod xi;

use std::sync::Arc;

pub use grothendieck::{
    base_projection, compose_masks, grothendieck_total, list_to_mask, mask_to_list, simplex_base,
    GrothendieckTotal,
};
pub use package::{build_N, n_of_functor, n_of_functor_collapsing, n_on_functor, Mode, NervePackage};
pub use simplicial::{
    reduced_nerve, semisimplicial_nerve, Chain, NerveError, SemiSimplicialSet, Truncation,
};
pub use xi::{final_object, initial_object, xi_functor, Xi};

use crate::fincat::{terminal, DegreeConvention};

/// Reads the degree convention off `∫N°(pt)`: if simplex dimension strictly
/// drops along every non-identity morphism, the direct classes are the ones
/// with a decreasing degree.
pub fn empirical_degree_convention() -> DegreeConvention {
    let p = build_N(Arc::new(terminal()), Mode::DirFull, Truncation::Level(2)).expect("point nerve");
    let decreasing = p
        .total
        .non_identity_morphisms()
        .all(|m| p.dim(p.total.src(m)) > p.dim(p.total.tgt(m)));
    if decreasing {
        DegreeConvention::DirDecreasing
    } else {
        DegreeConvention::DirIncreasing
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convention_is_decreasing() {
        assert_eq!(empirical_degree_convention(), DegreeConvention::DirDecreasing);
    }
}
