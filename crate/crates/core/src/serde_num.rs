//! Serializers that print big integers as JSON numbers when they fit in `u64`
//! and as decimal strings otherwise.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::ser::SerializeStruct;
use serde::Serializer;

pub fn big<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match n.to_u64() {
        Some(x) => s.serialize_u64(x),
        None => s.serialize_str(&n.to_string()),
    }
}

struct Big<'a>(&'a BigUint);

impl serde::Serialize for Big<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        big(self.0, s)
    }
}

pub fn ratio<S: Serializer>(r: &Ratio<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Ratio", 2)?;
    st.serialize_field("num", &Big(r.numer()))?;
    st.serialize_field("den", &Big(r.denom()))?;
    st.end()
}

pub fn ratio_u64<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Ratio", 2)?;
    st.serialize_field("num", r.numer())?;
    st.serialize_field("den", r.denom())?;
    st.end()
}
