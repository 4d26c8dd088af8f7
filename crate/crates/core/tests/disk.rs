use std::f64::consts::{FRAC_PI_2, PI};

use isoperim::disk;
use proptest::prelude::*;

/// Area of the lens shared by the unit disk and the disk of radius `tan θ`
/// centred at distance `sec θ`, as the sum of the two circular segments on
/// either side of the common chord.
fn lens_area(theta: f64) -> f64 {
    let r = theta.tan();
    let outer = theta - theta.sin() * theta.cos();
    let phi = FRAC_PI_2 - theta;
    let inner = r * r * (phi - phi.sin() * phi.cos());
    outer + inner
}

#[test]
fn lens_oracle() {
    for k in 1..50 {
        let t = FRAC_PI_2 * k as f64 / 50.0;
        assert!((disk::theta_to_area(t).unwrap() - lens_area(t)).abs() < 1e-12, "{t}");
    }
}

#[test]
fn profile_is_concave_in_square() {
    let areas: Vec<f64> = (1..400).map(|k| PI * k as f64 / 400.0).collect();
    let sq: Vec<f64> = areas.iter().map(|&a| disk::profile_I(a).unwrap().powi(2)).collect();
    for w in sq.windows(3) {
        assert!(w[0] + w[2] - 2.0 * w[1] < 1e-12);
    }
}

proptest! {
    #[test]
    fn round_trip(theta in 1e-4f64..FRAC_PI_2) {
        let a = disk::theta_to_area(theta).unwrap();
        prop_assert!((disk::area_to_theta(a).unwrap() - theta).abs() < 1e-10);
    }

    #[test]
    fn below_small_area_bound(area in 1e-8f64..PI) {
        let i = disk::profile_I(area).unwrap();
        prop_assert!(i <= (2.0 * PI * area).sqrt() + 1e-15);
        prop_assert!(i <= 2.0 + 1e-15);
    }

    #[test]
    fn monotone_in_theta(t in 1e-3f64..1.5, dt in 1e-4f64..0.05) {
        let t2 = (t + dt).min(FRAC_PI_2);
        prop_assert!(disk::theta_to_area(t2).unwrap() > disk::theta_to_area(t).unwrap());
        prop_assert!(disk::theta_to_length(t2).unwrap() > disk::theta_to_length(t).unwrap());
    }
}
