use kwidth::geometry::{quad_max_bruteforce, quad_max_oracle, ConstraintSet};
use ndarray::Array2;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn main() {
    let set = ConstraintSet::hyperrectangle(vec![1.0, 0.5, 2.0, 0.8]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let d = 4;
    let mut worst: f64 = 1.0;
    for trial in 0..2000 {
        let mut x = Array2::zeros((d, d));
        for i in 0..d {
            for j in 0..=i {
                let v = normal(&mut rng);
                x[[i, j]] = v;
                x[[j, i]] = v;
            }
        }
        let r = quad_max_oracle(&set, &x).unwrap();
        let bf = quad_max_bruteforce(&set, &x, 0, trial).unwrap();
        if r.value <= 0.0 && bf > 1e-9 {
            println!("trial {trial}: oracle ZERO, brute {bf}");
            println!("{x:?}");
            break;
        }
        if bf > 1e-9 {
            worst = worst.max(bf / r.value.max(1e-300));
        }
    }
    println!("worst ratio over scan: {worst}");
}
