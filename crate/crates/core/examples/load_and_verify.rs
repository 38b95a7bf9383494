//! Reading edge lists and Matrix Market files, then checking the fast
//! counts against brute-force enumeration.

use graphlets::oracle::brute_force_counts;
use graphlets::{exact_integer_counts, load_graph, Format};

const EDGE_LIST: &str = "\
# a house with a chimney
a b
b c
c d
d a
a c
c chimney
";

const MATRIX_MARKET: &str = "\
%%MatrixMarket matrix coordinate pattern symmetric
5 5 6
2 1
3 2
4 3
4 1
3 1
5 3
";

fn main() -> graphlets::Result<()> {
    for (name, text) in [("edge list", EDGE_LIST), ("matrix market", MATRIX_MARKET)] {
        let g = load_graph(text, Format::Auto)?;
        let fast = exact_integer_counts(&g, 1)?;
        let slow = brute_force_counts(&g)?;
        println!("{name}: n = {}, m = {}, labels {:?}", g.n(), g.m(), g.labels());
        for (p, c) in fast.iter().filter(|(_, &c)| c > 0) {
            println!("  {:<20} {}", p.name(), c);
        }
        println!("  matches brute force: {}", fast == slow);
        print!("  canonical form:\n{}", g.to_canonical_string());
    }
    Ok(())
}
