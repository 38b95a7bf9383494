//! Exact counts of all 17 graphlets on a preferential-attachment graph.
//!
//! cargo run --release --example exact_counts -- [n] [k]

use graphlets::generate::barabasi_albert;
use graphlets::{exact_integer_counts, Graphlet};

fn main() -> graphlets::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("integer argument"));
    let n = args.next().unwrap_or(2000);
    let k = args.next().unwrap_or(4);
    let g = barabasi_albert(n, k, 1);
    println!("n = {}, m = {}, max degree = {}", g.n(), g.m(), g.max_degree());

    let workers = std::thread::available_parallelism().map_or(1, |p| p.get());
    let y = exact_integer_counts(&g, workers)?;
    for (p, count) in y.iter() {
        println!("{:>2} {:<20} {}", p.id(), p.name(), count);
    }

    // Every triple and quadruple of vertices is exactly one pattern.
    let n = g.n() as u128;
    let triples: u128 = Graphlet::ALL[2..6].iter().map(|&p| y[p]).sum();
    assert_eq!(triples, n * (n - 1) * (n - 2) / 6);
    Ok(())
}
