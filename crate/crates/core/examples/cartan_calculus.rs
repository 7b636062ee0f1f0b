//! Cartan identities for the log model, the affine model and its sign-error variant, and the
//! extension of the log model over a two-open cover.

use dgla::cartan::models::{affine_model, affine_model_with_sign_error, log_model};
use dgla::cartan::{check_calculus, tw_extend, SemicosimplicialCalculus};

fn main() -> dgla::Result<()> {
    for m in [log_model(3), affine_model(3), affine_model_with_sign_error(3)] {
        let r = check_calculus(&m.calculus);
        print!("{}: passes {}", m.name, r.passes());
        if let Some(v) = r.first() {
            print!(", first violation {} at a = {:?}, b = {:?}", v.identity.name(), v.a, v.b);
        }
        println!();
    }
    let log = log_model(1);
    let sc = SemicosimplicialCalculus::uniform_cech(&log.calculus, 2, None)?;
    let tw = tw_extend(&sc, 1)?;
    println!("TW extension of {} at P = 1: passes {}", log.name, check_calculus(&tw).passes());
    Ok(())
}
