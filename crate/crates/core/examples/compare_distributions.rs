//! Graphlet frequency distributions of two random graph models and the
//! KS distance between them, exact and estimated.

use graphlets::generate::{barabasi_albert, erdos_renyi};
use graphlets::{estimate, exact_counts, gfd, ks_statistic, EngineConfig, GfdVariant, SampleDesign};

fn main() -> graphlets::Result<()> {
    let er = erdos_renyi(500, 0.02, 1);
    let ba = barabasi_albert(500, 5, 1);
    for variant in [GfdVariant::Connected, GfdVariant::Combined] {
        let a = gfd(&exact_counts(&er, 1)?.x, variant)?;
        let b = gfd(&exact_counts(&ba, 1)?.x, variant)?;
        let d = ks_statistic(&a, &b)?;
        println!("{variant:?}");
        for (p, (x, y)) in variant.patterns().iter().zip(a.iter().zip(&b)) {
            println!("  {:<20} ER {:.5}  BA {:.5}", p.name(), x, y);
        }
        println!("  KS(ER, BA) = {d:.5}");
    }

    let exact = gfd(&exact_counts(&ba, 1)?.x, GfdVariant::Connected)?;
    let sampled = estimate(&ba, &SampleDesign::probability(0.2, 4), EngineConfig::default())?;
    let approx = gfd(&sampled.x, GfdVariant::Connected)?;
    println!("KS(exact BA, 20% sample of BA) = {:.5}", ks_statistic(&exact, &approx)?);
    Ok(())
}
