//! Lifting first-order seeds on the nilpotent witness `[x, y] = z` over `Q[s]/s³`.

use dgla::artinian::ArtinianAlgebra;
use dgla::dgla::models::nilpotent_witness;
use dgla::mc::{mc_lift, LiftOutcome, Tensor};

fn main() -> dgla::Result<()> {
    let l = nilpotent_witness();
    let a = ArtinianAlgebra::polynomial(3);
    let s = a.index_of("s").expect("s");
    let x = l.basis(1, 0);
    let y = l.basis(1, 1);
    for (name, v) in [("s·x", x.clone()), ("s·(x + y)", x.add(&y))] {
        let seed = Tensor::simple(&l, &a, &v, s);
        match mc_lift(&l, &a, &seed)? {
            LiftOutcome::Solution(t) => println!("{name}: lifts to {}", l.space().describe(&t.component(s))),
            LiftOutcome::Obstructed(o) => {
                let class = l.cohomology().representative(2, &o.class.column(0), l.dim(2));
                println!("{name}: obstructed at order {} with class {}·[{}]", o.order, a.labels()[o.layer[0]], l.space().describe(&class));
            }
        }
    }
    Ok(())
}
