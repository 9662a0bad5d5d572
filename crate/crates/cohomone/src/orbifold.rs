//! Orbifold pipeline: the orbifold test, stratification data, orbifold
//! fundamental groups, good/bad verdicts, and good-structure witnesses.

use crate::diagram::ValidatedDiagram;

/// A validated diagram determines a cohomogeneity-one orbifold iff both
/// normal spaces of directions are spherical space forms.
pub fn is_orbifold(v: &ValidatedDiagram) -> bool {
    v.class_minus.is_spherical_space_form() && v.class_plus.is_spherical_space_form()
}
