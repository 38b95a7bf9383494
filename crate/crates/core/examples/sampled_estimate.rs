//! Unbiased estimates from a fraction of the edges, with 95% bounds,
//! compared against the exact counts.

use graphlets::generate::erdos_renyi;
use graphlets::{estimate, exact_counts, EngineConfig, Graphlet, SampleDesign};

fn main() -> graphlets::Result<()> {
    let g = erdos_renyi(400, 0.05, 7);
    let truth = exact_counts(&g, 1)?;

    for design in [
        SampleDesign::probability(0.1, 3),
        SampleDesign::size(g.m() / 10, 3),
        SampleDesign::size(g.m() / 10, 3).with_replacement(true),
    ] {
        let est = estimate(&g, &design, EngineConfig::default())?;
        println!("{:?} {}, {} edges", design.mode, est_kind(&design), est.k_used);
        for p in [Graphlet::Triangle, Graphlet::TailedTriangle, Graphlet::FourPath, Graphlet::FourCycle] {
            let covered = est.lb[p] <= truth.x[p] && truth.x[p] <= est.ub[p];
            println!(
                "  {:<16} est {:>12.1}  [{:>12.1}, {:>12.1}]  exact {:>10}  {}",
                p.name(),
                est.x[p],
                est.lb[p],
                est.ub[p],
                truth.x[p],
                if covered { "covered" } else { "missed" }
            );
        }
    }
    Ok(())
}

fn est_kind(d: &SampleDesign) -> &'static str {
    if d.replacement {
        "with replacement"
    } else {
        "without replacement"
    }
}
