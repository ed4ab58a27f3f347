//! In a linear potential the resonance drifts through momentum space at rate 2κ.
//! Prints the momentum where the ground-to-excited element peaks as time runs.

use rabikit::analytic::LinearPropagator;
use rabikit::{MomentumGrid, SimulationParams};

fn main() -> rabikit::Result<()> {
    let grid = MomentumGrid::new(2048, -12.8, 12.8)?;
    let params = SimulationParams::new(0.1, 0.0).with_kappa(1.0);
    let prop = LinearPropagator::new(&grid, &params)?;

    println!("{:>6} {:>12} {:>10} {:>14}", "tau", "peak nu", "|u_eg|", "column defect");
    for j in 1..=8 {
        let tau = 0.25 * j as f64;
        let el = prop.elements(tau)?;
        let (i, amp) = el
            .u_eg
            .iter()
            .enumerate()
            .map(|(i, u)| (i, u.norm()))
            .fold((0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        println!("{tau:6.2} {:12.4} {amp:10.4} {:14.2e}", grid.nu(i), el.column_unitarity_defect());
    }
    Ok(())
}
