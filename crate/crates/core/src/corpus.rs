//! Example models bundled with the crate.

use crate::diagnostic::Code;

/// Shor's factoring algorithm: three classes, two compositions and a
/// sequence diagram mixing quantum and classical messages.
pub const SHOR: &str = include_str!("../examples/shor.quml");

/// A model with no quantum content at all.
pub const LIBRARY: &str = include_str!("../examples/library.quml");

/// One file per validator code, each producing exactly that code.
pub const BY_CODE: [(Code, &str, &str); 9] = [
    (Code::E020, "e020_unmarked.quml", include_str!("../examples/e020_unmarked.quml")),
    (Code::W021, "w021_overmarked.quml", include_str!("../examples/w021_overmarked.quml")),
    (Code::E022, "e022_marker_mismatch.quml", include_str!("../examples/e022_marker_mismatch.quml")),
    (Code::E030, "e030_msg_under.quml", include_str!("../examples/e030_msg_under.quml")),
    (Code::E031, "e031_msg_over.quml", include_str!("../examples/e031_msg_over.quml")),
    (Code::E032, "e032_endpoint.quml", include_str!("../examples/e032_endpoint.quml")),
    (Code::E033, "e033_unknown_op.quml", include_str!("../examples/e033_unknown_op.quml")),
    (Code::E040, "e040_assoc.quml", include_str!("../examples/e040_assoc.quml")),
    (Code::E050, "e050_cycle.quml", include_str!("../examples/e050_cycle.quml")),
];

/// Every bundled file as `(file name, source)`.
pub fn all() -> impl Iterator<Item = (&'static str, &'static str)> {
    [("shor.quml", SHOR), ("library.quml", LIBRARY)]
        .into_iter()
        .chain(BY_CODE.iter().map(|(_, name, src)| (*name, *src)))
}
