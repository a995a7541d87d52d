//! Conjugacy of powers in Baumslag–Solitar groups as vector addition reachability.

use num_bigint::BigInt;
use vgbs::gbs::{bounded_reachability, build_reachability_instance, reachability_closure};
use vgbs::{fixtures, Group, ReachabilityResult, VGBSGraph};

fn main() {
    let bs = |p, q| Group::new(VGBSGraph::new(fixtures::baumslag_solitar_spec(p, q)).unwrap());
    for (p, q, m, n) in [(2, 3, 2, 3), (2, 3, 2, 4), (2, 4, 6, 48), (3, 5, 9, 25), (1, -1, 1, -1)] {
        let g = bs(p, q);
        let (m, n) = (BigInt::from(m), BigInt::from(n));
        let inst = build_reachability_instance(g.graph(), &m, 0, &n, 0).unwrap();
        let closure = reachability_closure(&inst.transitions, &inst.source, 10_000);
        let size = closure.map_or("over budget".to_string(), |c| c.len().to_string());
        let verdict = match bounded_reachability(&inst, 10_000) {
            ReachabilityResult::Reachable { transitions } => {
                format!("conjugate by {}", g.render(&g.replay_sequence(&inst, &transitions)))
            }
            ReachabilityResult::DefinitivelyUnreachable { .. } => "not conjugate".into(),
            ReachabilityResult::Inconclusive { explored, .. } => format!("undecided after {explored} states"),
        };
        println!("BS({p},{q}): a^{m} vs a^{n}: closure {size}, {verdict}");
    }
}
