//! The standard test groups and splittings.

use std::sync::Arc;

use crate::error::Result;
use crate::presentation::{Group, GroupPresentation};
use crate::splitting::{BaseSplitting, Role, Splitting, Transversal};
use crate::subgroup::Subgroup;
use crate::surface;
use crate::word::Word;

pub fn z() -> Group {
    Arc::new(GroupPresentation::free("Z", &["t"]).unwrap())
}

pub fn f2() -> Group {
    Arc::new(GroupPresentation::free("F2", &["x", "y"]).unwrap())
}

pub fn f3() -> Group {
    Arc::new(GroupPresentation::free("F3", &["x", "y", "z"]).unwrap())
}

/// The infinite dihedral group `<a, b | a^2, b^2>`.
pub fn z2_free_z2() -> Group {
    Arc::new(GroupPresentation::rewriting("Z2*Z2", &["a", "b"], &["a a", "b b"]).unwrap())
}

/// `<a, b | a^4, b^4, a^2 b^-2>`.
pub fn z4_amalgam() -> Group {
    Arc::new(GroupPresentation::rewriting("Z4*Z2Z4", &["a", "b"], &["a a a a", "b b b b", "a a b' b'"]).unwrap())
}

/// The closed genus-two surface group `<a, b, c, d | [a,b][c,d]>`.
pub fn genus2() -> Group {
    Arc::new(
        GroupPresentation::free_amalgam("genus2", &["a", "b", "c", "d"], vec![0, 0, 1, 1], "a b a' b'", "d c d' c'")
            .unwrap(),
    )
}

fn w(g: &Group, s: &str) -> Word {
    g.parse(s).unwrap()
}

/// `Z` as an HNN extension of the trivial group.
pub fn z_splitting() -> Result<Splitting> {
    let g = z();
    let base = BaseSplitting::hnn(
        &g,
        vec![Role::Stable],
        Subgroup::trivial(&g),
        Subgroup::trivial(&g),
        Transversal::Shortlex,
    )?;
    Ok(Splitting::from_base("Z", base))
}

pub fn z2_free_z2_splitting() -> Result<Splitting> {
    let g = z2_free_z2();
    let base = BaseSplitting::amalgam(&g, vec![Role::A, Role::B], Subgroup::trivial(&g), Transversal::Shortlex)?;
    Ok(Splitting::from_base("Z2*Z2", base))
}

pub fn z4_amalgam_splitting() -> Result<Splitting> {
    let g = z4_amalgam();
    let h = Subgroup::generated(&g, &[w(&g, "a a")])?;
    let t = Transversal::Explicit { first: vec![Word::empty(), w(&g, "a")], second: vec![Word::empty(), w(&g, "b")] };
    let base = BaseSplitting::amalgam(&g, vec![Role::A, Role::B], h, t)?;
    Ok(Splitting::from_base("Z4*Z2Z4", base))
}

/// `<x> * <y, z>`.
pub fn f3_first() -> Result<Splitting> {
    let g = f3();
    let base = BaseSplitting::amalgam(&g, vec![Role::A, Role::B, Role::B], Subgroup::trivial(&g), Transversal::Shortlex)?;
    Ok(Splitting::from_base("<x>*<y,z>", base))
}

/// `<x, y> * <z>`.
pub fn f3_second() -> Result<Splitting> {
    let g = f3();
    let base = BaseSplitting::amalgam(&g, vec![Role::A, Role::A, Role::B], Subgroup::trivial(&g), Transversal::Shortlex)?;
    Ok(Splitting::from_base("<x,y>*<z>", base))
}

/// The separating curve `[a,b]` on the genus-two surface.
pub fn genus2_curve() -> Result<Splitting> {
    let g = genus2();
    let h = Subgroup::cyclic_powers(&g, &w(&g, "a b a' b'"));
    let base = BaseSplitting::amalgam(&g, vec![Role::A, Role::A, Role::B, Role::B], h, Transversal::Shortlex)?;
    Ok(Splitting::from_base("genus2-curve", base))
}

/// Named splittings used by the property and acceptance tests.
pub fn all() -> Result<Vec<Arc<Splitting>>> {
    let zz = z2_free_z2_splitting()?;
    let a = w(zz.group(), "a");
    let slope = surface::slope_splitting(0, 1)?;
    let y = w(slope.group(), "y");
    let list = vec![
        z_splitting()?,
        zz.clone(),
        z4_amalgam_splitting()?,
        slope.clone(),
        f3_first()?,
        f3_second()?,
        genus2_curve()?,
        surface::arc_splitting()?,
        zz.conjugate(&a)?,
        slope.conjugate(&y)?,
    ];
    Ok(list.into_iter().map(Arc::new).collect())
}
