//! Splittable counter-based generator for reproducible random suites.
//!
//! Each draw is a pure function of (seed, stream, counter), so suites can be
//! split across checks without shared state and replay byte-identically.

#[derive(Clone, Copy, Debug)]
pub struct CounterRng {
    seed: u64,
    stream: u64,
    counter: u64,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

impl CounterRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        CounterRng {
            seed,
            stream,
            counter: 0,
        }
    }

    /// Derive an independent stream; draws never collide with the parent's.
    pub fn split(&self, substream: u64) -> Self {
        CounterRng::new(
            splitmix(self.seed ^ splitmix(self.stream)),
            splitmix(substream.wrapping_add(0x517c_c1b7_2722_0a95)),
        )
    }

    pub fn next_u64(&mut self) -> u64 {
        let v = splitmix(self.seed ^ splitmix(self.stream.wrapping_add(splitmix(self.counter))));
        self.counter += 1;
        v
    }

    /// Uniform in [0, n).
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Small signed integer in [-m, m].
    pub fn small_int(&mut self, m: i64) -> i64 {
        (self.next_u64() % (2 * m as u64 + 1)) as i64 - m
    }

    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}
