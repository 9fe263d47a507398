use braidanneal::pair::phase_operator_matrix;
use braidanneal::linalg::eigh_all;

fn main() {
    for cutoff in [3usize, 5, 7, 9, 15, 31, 63] {
        let phi = phase_operator_matrix(cutoff);
        let (vals, _) = eigh_all(&phi).unwrap();
        let hi = vals[vals.len()-1];
        println!("cutoff {cutoff:3}: max eig = {hi:.6} = {:.4} π", hi / std::f64::consts::PI);
    }
}
