//! Display conventions: rates in Mbps with 2 decimals, fractions with 4
//! decimals, costs as half-up whole units next to the exact value.

use adaptstream_core::scenario::display_cost;

pub fn mbps(bps: f64) -> String {
    format!("{:.2} Mbps", bps / 1e6)
}

pub fn fraction(value: f64) -> String {
    format!("{value:.4}")
}

pub fn ms(value: f64) -> String {
    format!("{value:.2} ms")
}

pub fn cost(value: f64) -> String {
    format!("{:.0}", display_cost(value))
}
