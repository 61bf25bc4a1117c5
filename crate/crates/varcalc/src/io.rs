//! CSV emission of trajectories with the energy function alongside the
//! kinematic columns.

use std::io::Write;

use crate::dynamics::energy_h;
use crate::lagrangian::SecondOrderLagrangian;
use crate::state::Trajectory;

/// Writes a trajectory as CSV with columns
/// `t, q1..qn, qd1..qdn, qdd1..qddn, h`,
/// where `h` is the energy function at each sample.
pub fn write_trajectory_csv<W: Write>(
    lag: &SecondOrderLagrangian,
    traj: &Trajectory,
    out: &mut W,
) -> std::io::Result<()> {
    let n = lag.dim();
    let mut header = String::from("t");
    for (prefix, _) in [("q", 0), ("qd", 0), ("qdd", 0)] {
        for i in 1..=n {
            header.push(',');
            header.push_str(prefix);
            header.push_str(&i.to_string());
        }
    }
    header.push_str(",h");
    writeln!(out, "{header}")?;
    for state in &traj.states {
        let h = energy_h(lag, state);
        let mut line = format!("{}", state.t);
        for block in [&state.q, &state.qd, &state.qdd] {
            for v in block {
                line.push(',');
                line.push_str(&format!("{v}"));
            }
        }
        line.push(',');
        line.push_str(&format!("{h}"));
        writeln!(out, "{line}")?;
    }
    Ok(())
}
