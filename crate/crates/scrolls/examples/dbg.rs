use scrolls::*;
use scrolls::matrix::matrix_from_strs;
use scrolls::poly::vars;
fn main() {
    let c = Ctx::default();
    let vs = vars(&["t1", "t2"]);
    let m = matrix_from_strs(&vs, &[
        &["1","t1","t2","t1^2","t2^2"],
        &["0","1","0","2*t1","0"]]).unwrap();
    let r = scrolls::scroll::plucker_jacobian_rank(&m, &vs, &c, "dbg").unwrap();
    println!("jacobian rank = {r} (expect 2)");
}
