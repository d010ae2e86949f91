use super::{FormError, HomForm};

/// `d(dω)`.
pub fn d_squared(omega: &HomForm) -> HomForm {
    omega.exterior_d().exterior_d()
}

/// `d(a∧b) − da∧b − (−1)^{|a|} a∧db`, splitting `a` into total-degree pieces.
pub fn leibniz_defect(a: &HomForm, b: &HomForm) -> Result<HomForm, FormError> {
    let lhs = a.wedge(b)?.exterior_d();
    let mut rhs = a.exterior_d().wedge(b)?;
    let db = b.exterior_d();
    for k in a.total_degrees() {
        let term = a.total_degree_component(k).wedge(&db)?;
        rhs = rhs.try_add(&if k.rem_euclid(2) == 1 { term.neg() } else { term })?;
    }
    lhs.try_add(&rhs.neg())
}

/// `(a∧b)∧c − a∧(b∧c)`.
pub fn associativity_defect(a: &HomForm, b: &HomForm, c: &HomForm) -> Result<HomForm, FormError> {
    a.wedge(b)?.wedge(c)?.try_add(&a.wedge(&b.wedge(c)?)?.neg())
}
