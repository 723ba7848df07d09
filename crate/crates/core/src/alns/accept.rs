use rand::Rng;

/// Probability of moving to a solution of cost `f_new` from `f_curr`.
pub fn acceptance_probability(f_new: f64, f_curr: f64, tem: f64) -> f64 {
    if f_new < f_curr {
        1.0
    } else {
        (-(f_new - f_curr) / tem).exp()
    }
}

/// Simulated-annealing test; improving moves never consume a draw.
pub fn accept<R: Rng + ?Sized>(f_new: f64, f_curr: f64, tem: f64, rng: &mut R) -> bool {
    if f_new < f_curr {
        return true;
    }
    let u: f64 = rng.random();
    u < acceptance_probability(f_new, f_curr, tem)
}

/// Temperature after `n` iterations.
pub fn temperature(tem0: f64, cooling: f64, n: usize) -> f64 {
    tem0 * cooling.powi(n as i32)
}

/// Starting temperature from the initial cost.
pub fn initial_temperature(f0: f64, factor: f64) -> f64 {
    if f0 == 0.0 {
        factor
    } else {
        factor * f0.abs()
    }
}
