/// Sample mean with a normal-approximation 95% interval:
/// mean ± 1.96 · s / √R, with `s` the sample standard deviation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    pub half_width: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Summary {
        let count = values.len();
        if count == 0 {
            return Summary { count, mean: f64::NAN, half_width: f64::NAN };
        }
        let mean = values.iter().sum::<f64>() / count as f64;
        let half_width = if count < 2 {
            0.0
        } else {
            let var = values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (count - 1) as f64;
            1.96 * var.sqrt() / (count as f64).sqrt()
        };
        Summary { count, mean, half_width }
    }

    pub fn low(&self) -> f64 {
        self.mean - self.half_width
    }

    pub fn high(&self) -> f64 {
        self.mean + self.half_width
    }
}
