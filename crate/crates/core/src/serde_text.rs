//! Serde helpers writing exact values in their text forms (`p/q`, `[lo,hi]`).

use serde::Serializer;

use crate::exactmath::{Interval, Value};
use crate::Rational;

pub fn rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(q)
}

pub fn interval<S: Serializer>(iv: &Interval, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(iv)
}

pub fn value<S: Serializer>(v: &Value, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
