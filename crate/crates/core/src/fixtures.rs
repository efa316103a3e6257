//! Small hand-checked instances used by tests, the CLI `gen` command and the
//! FFI smoke tests.

use crate::io::parse_matrix_text;
use crate::pattern::PatternMatrix;
use crate::vertex_set::VertexSet;

/// Six-state example: `{x1}` is the unique minimum input set, while `{x6}`
/// is a zero forcing set of the plain graph but fails the self-force
/// restriction on the modified graph.
pub const WORKED_EXAMPLE_TEXT: &str = "\
x00000
x0000x
0x0000
00x000
x00x00
x00000
";

/// 15-state banded staircase pattern. Driving its last four states makes it
/// strongly structurally controllable, and no three states suffice.
pub const STAIRCASE15_TEXT: &str = "\
0000x0000000000
0000xx000000000
0000xxx00000000
00000xxx0000000
00000xxxx000000
00000xxxxx00000
00000xxxxxx0000
00000000xxxx000
00000000xxxxx00
00000000xxxxxx0
00000000xxxxxxx
00000000000xxxx
00000000000xxxx
00000000000xxxx
00000000000xxxx
";

pub fn worked_example() -> PatternMatrix {
    parse_matrix_text(WORKED_EXAMPLE_TEXT).expect("fixture parses")
}

pub fn staircase15() -> PatternMatrix {
    parse_matrix_text(STAIRCASE15_TEXT).expect("fixture parses")
}

/// The four dedicated inputs that control [`staircase15`]: states x12..x15.
pub fn staircase15_inputs() -> VertexSet {
    VertexSet::from_indices(15, 11..15).expect("in range")
}
