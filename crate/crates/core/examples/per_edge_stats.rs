//! Per-edge graphlet counts: exact and scan-sampled values for the hardest
//! edge, then the spread of 4-clique counts over all edges.

use graphlets::generate::barabasi_albert;
use graphlets::micro::{summarize, MicroCounter};
use graphlets::{micro_counts, micro_exact, Graphlet, MicroConfig};

fn main() -> graphlets::Result<()> {
    let g = barabasi_albert(3000, 6, 11);
    let hardest = (0..g.m()).max_by_key(|&e| g.edge_hardness(e)).unwrap();
    let exact = micro_exact(&g, hardest)?;
    let sampled = micro_counts(&g, hardest, 0.25, 5)?;
    let (u, v) = exact.endpoints;
    println!("edge {hardest} = ({}, {}), degrees {} and {}", g.label(u), g.label(v), g.degree(u), g.degree(v));
    for p in &Graphlet::ALL[2..] {
        println!("  {:<20} exact {:>12}  sampled {:>14.1}", p.name(), exact.x[*p], sampled.x[*p]);
    }

    let mut counter = MicroCounter::new(&g);
    let cliques = (0..g.m())
        .map(|e| counter.count(e, &MicroConfig::exact()).map(|m| m.x[Graphlet::FourClique]))
        .collect::<graphlets::Result<Vec<_>>>()?;
    let s = summarize(&cliques)?;
    println!(
        "4-clique per edge: mean {:.2}, median {}, q1 {}, q3 {}, max {}",
        s.mean, s.median, s.q1, s.q3, s.max
    );
    Ok(())
}
