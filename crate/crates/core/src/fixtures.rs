//! Small hand-checkable instances used across tests and examples.

use crate::model::{build_instance, AuthorshipInstance};

/// Author `A` on papers 1–3 and author `B` on papers 3–5.
pub fn two_authors_overlap() -> AuthorshipInstance {
    build_instance(&[vec!["A"], vec!["A"], vec!["A", "B"], vec!["B"], vec!["B"]])
        .expect("fixture is valid")
}

/// Papers `{a,b}`, `{b,c}`, `{a,c}`.
pub fn triangle() -> AuthorshipInstance {
    build_instance(&[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).expect("fixture is valid")
}

/// Author lists of [`two_authors_overlap`].
pub fn two_authors_overlap_lists() -> Vec<Vec<String>> {
    two_authors_overlap().to_author_lists()
}
