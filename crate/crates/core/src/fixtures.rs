//! Small named instances used by tests, benches and the CLI examples.

use crate::branchdec::{DirectedDecomposition, Shape};
use crate::instances::{Graph, Hypergraph, RationalVectorFamily};
use crate::subset::Mask;

/// Six vectors in `ℚ⁴`: `e1, e2, e3, e4, e1+e2, (1,1,1,1)`.
pub fn vector_family() -> RationalVectorFamily {
    let rows = vec![
        vec![1, 0, 0, 0],
        vec![0, 1, 0, 0],
        vec![0, 0, 1, 0],
        vec![0, 0, 0, 1],
        vec![1, 1, 0, 0],
        vec![1, 1, 1, 1],
    ];
    let labels = ["e1", "e2", "e3", "e4", "e12", "e1234"].iter().map(|s| s.to_string()).collect();
    RationalVectorFamily::from_integers(4, &rows, Some(labels)).expect("fixture")
}

const E1: usize = 0;
const E2: usize = 1;
const E3: usize = 2;
const E4: usize = 3;
const E12: usize = 4;
const E1234: usize = 5;

/// Width-1 decomposition of [`vector_family`].
pub fn vector_decomposition_narrow() -> DirectedDecomposition {
    let i1 = Shape::node(Shape::elem(E1), Shape::elem(E2));
    let i2 = Shape::node(i1, Shape::elem(E12));
    let i3 = Shape::node(i2, Shape::elem(E1234));
    let i4 = Shape::node(Shape::elem(E3), Shape::elem(E4));
    DirectedDecomposition::from_shape(&Shape::node(i3, i4), 0b111111).expect("fixture")
}

/// Width-2 decomposition of [`vector_family`].
pub fn vector_decomposition_wide() -> DirectedDecomposition {
    let i9 = Shape::node(Shape::elem(E1), Shape::elem(E3));
    let i6 = Shape::node(i9, Shape::elem(E12));
    let i7 = Shape::node(Shape::elem(E2), Shape::elem(E4));
    let i8 = Shape::node(Shape::elem(E1234), i7);
    DirectedDecomposition::from_shape(&Shape::node(i6, i8), 0b111111).expect("fixture")
}

/// The set `{(1,1,1,1), e2, e4}` of [`vector_family`].
pub fn vector_wide_edge_separation() -> Mask {
    1 << E1234 | 1 << E2 | 1 << E4
}

/// Seven vertices `a..g`, twelve edges; used for cut-rank and width examples.
pub fn cutrank_graph() -> Graph {
    Graph::from_compact("abcdefg", "ab ac bc ef ad ae af bd bg ce cf cg").expect("fixture")
}

/// Decomposition of the vertex set of [`cutrank_graph`] with widths 8, 3, 2 under ν, μ, ρ.
pub fn rankdec_decomposition() -> DirectedDecomposition {
    let (a, b, c, d, e, f, g) = (0, 1, 2, 3, 4, 5, 6);
    let i1 = Shape::node(Shape::elem(a), Shape::elem(c));
    let i2 = Shape::node(Shape::elem(b), i1);
    let i3 = Shape::node(Shape::elem(d), Shape::elem(g));
    let i4 = Shape::node(Shape::elem(e), Shape::elem(f));
    let i5 = Shape::node(i3, i4);
    DirectedDecomposition::from_shape(&Shape::node(i2, i5), 0b1111111).expect("fixture")
}

/// Hypergraph on `1..5` whose cover function is not submodular.
pub fn h0() -> Hypergraph {
    Hypergraph::from_labels(
        &["1", "2", "3", "4", "5"],
        &[
            ("a", &["1", "3"]),
            ("b", &["1", "2", "4"]),
            ("c", &["2", "5"]),
            ("d", &["3"]),
            ("e", &["4"]),
            ("f", &["5"]),
        ],
    )
    .expect("fixture")
}

/// Five vertices, three triangles sharing the edge `vw`.
///
/// Edge order: `vw, vx, wx, vy, wy, vz, wz`.
pub fn triangles_graph() -> Graph {
    Graph::from_compact("vwxyz", "vw vx wx vy wy vz wz").expect("fixture")
}

/// Square `abcd` with a centre `s`, four `K4` blocks on its sides, and a
/// pendant fan of three triangles at `t` attached to `d`.
pub fn exadec_graph() -> Graph {
    Graph::from_compact("abcdefghijklmnopqrst", EXADEC_EDGES).expect("fixture")
}

/// [`exadec_graph`] without the centre `s`.
pub fn exadec2_graph() -> Graph {
    let without_s: Vec<&str> = EXADEC_EDGES.split_whitespace().filter(|e| !e.contains('s')).collect();
    Graph::from_compact("abcdefghijklmnopqrt", &without_s.join(" ")).expect("fixture")
}

const EXADEC_EDGES: &str = "ab bc cd da ae af be bf ef bg bh cg ch gh ci cj di dj ij dk dl ak al kl \
                            tm tn mn to tp op tq tr qr sa sb sc sd dt";

/// Complete graph on `n` vertices.
pub fn complete_graph(n: usize) -> Graph {
    let mut es = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            es.push((i, j));
        }
    }
    Graph::indexed(n, &es).expect("fixture")
}

pub fn cycle_graph(n: usize) -> Graph {
    let es: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::indexed(n, &es).expect("fixture")
}

pub fn path_graph(n: usize) -> Graph {
    let es: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::indexed(n, &es).expect("fixture")
}

/// `r × c` grid, vertex `(i,j)` has index `i*c + j`.
pub fn grid_graph(r: usize, c: usize) -> Graph {
    let mut es = Vec::new();
    for i in 0..r {
        for j in 0..c {
            if j + 1 < c {
                es.push((i * c + j, i * c + j + 1));
            }
            if i + 1 < r {
                es.push((i * c + j, (i + 1) * c + j));
            }
        }
    }
    Graph::indexed(r * c, &es).expect("fixture")
}

/// Two triangles `abc`, `cde` sharing the vertex `c`.
pub fn bowtie_graph() -> Graph {
    Graph::from_compact("abcde", "ab bc ca cd de ec").expect("fixture")
}

/// Two disjoint triangles joined by the edge `cd`.
pub fn linked_triangles_graph() -> Graph {
    Graph::from_compact("abcdef", "ab bc ca cd de ef fd").expect("fixture")
}

/// Star with centre `0` and `k` leaves.
pub fn star_graph(k: usize) -> Graph {
    let es: Vec<(usize, usize)> = (1..=k).map(|i| (0, i)).collect();
    Graph::indexed(k + 1, &es).expect("fixture")
}
