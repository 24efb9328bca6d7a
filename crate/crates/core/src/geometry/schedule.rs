use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::polyalg::parse_poly;

/// How the osculation parameters `t_1, ..., t_N` are chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum ScheduleKind {
    /// `t_i = i^k`.
    Power(u32),
    /// `t_i = r^(i-1)`, `r > 1`.
    Geometric(BigRational),
    /// Explicit values.
    Explicit(Vec<BigRational>),
}

impl ScheduleKind {
    pub fn label(&self) -> String {
        match self {
            ScheduleKind::Power(k) => format!("power:{k}"),
            ScheduleKind::Geometric(r) => format!("geom:{r}"),
            ScheduleKind::Explicit(v) => {
                format!("list:{}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let registry = crate::polyalg::Registry::new(Vec::<String>::new());
    let poly = parse_poly(s.trim(), &registry)?;
    Ok(poly.constant_term())
}

/// Accepts `power:K`, `geom:R`, `list:V1,V2,...` and `file:PATH` (whitespace
/// or comma separated rationals).
impl FromStr for ScheduleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("schedule {s:?} should look like power:6")))?;
        let list = |text: &str| -> Result<Vec<BigRational>> {
            text.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|v| !v.is_empty())
                .map(parse_rational)
                .collect()
        };
        match kind {
            "power" => arg
                .trim()
                .parse()
                .map(ScheduleKind::Power)
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}"))),
            "geom" => Ok(ScheduleKind::Geometric(parse_rational(arg)?)),
            "list" => Ok(ScheduleKind::Explicit(list(arg)?)),
            "file" => {
                let text = std::fs::read_to_string(arg)
                    .map_err(|e| Error::InvalidInput(format!("cannot read schedule file {arg}: {e}")))?;
                Ok(ScheduleKind::Explicit(list(&text)?))
            }
            _ => Err(Error::Parse(format!("unknown schedule kind {kind:?}"))),
        }
    }
}

/// `N` distinct positive parameters.
pub fn t_schedule(count: usize, kind: &ScheduleKind) -> Result<Vec<BigRational>> {
    if count == 0 {
        return Err(Error::InvalidSchedule("a schedule needs at least one value".into()));
    }
    let values: Vec<BigRational> = match kind {
        ScheduleKind::Power(0) => return Err(Error::InvalidSchedule("power schedule needs k >= 1".into())),
        ScheduleKind::Power(k) => (1..=count).map(|i| num_traits::pow(BigRational::from_integer(i.into()), *k as usize)).collect(),
        ScheduleKind::Geometric(r) => {
            if r <= &BigRational::one() {
                return Err(Error::InvalidSchedule(format!("geometric ratio {r} must exceed 1")));
            }
            (0..count).map(|i| num_traits::pow(r.clone(), i)).collect()
        }
        ScheduleKind::Explicit(v) => {
            if v.len() != count {
                return Err(Error::InvalidSchedule(format!("{} values supplied, {count} needed", v.len())));
            }
            v.clone()
        }
    };
    if let Some(bad) = values.iter().find(|v| !v.is_positive()) {
        return Err(Error::InvalidSchedule(format!("value {bad} is not positive")));
    }
    for (i, v) in values.iter().enumerate() {
        if values[..i].contains(v) {
            return Err(Error::InvalidSchedule(format!("value {v} is repeated")));
        }
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{frac, rat};

    #[test]
    fn power_schedules() {
        assert_eq!(t_schedule(8, &ScheduleKind::Power(1)).unwrap(), (1..=8).map(rat).collect::<Vec<_>>());
        let six = t_schedule(8, &ScheduleKind::Power(6)).unwrap();
        assert_eq!(six[1], rat(64));
        assert_eq!(six[2], rat(729));
        assert_eq!(six[7], rat(262144));
    }

    #[test]
    fn invalid_schedules() {
        let dup = ScheduleKind::Explicit(vec![rat(1), rat(2), rat(1)]);
        assert!(matches!(t_schedule(3, &dup), Err(Error::InvalidSchedule(_))));
        assert!(t_schedule(2, &ScheduleKind::Explicit(vec![rat(0), rat(1)])).is_err());
        assert!(t_schedule(2, &ScheduleKind::Explicit(vec![rat(1)])).is_err());
        assert!(t_schedule(3, &ScheduleKind::Geometric(rat(1))).is_err());
        assert!(t_schedule(0, &ScheduleKind::Power(1)).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!("power:6".parse::<ScheduleKind>().unwrap(), ScheduleKind::Power(6));
        assert_eq!("geom:5/2".parse::<ScheduleKind>().unwrap(), ScheduleKind::Geometric(frac(5, 2)));
        assert_eq!(
            "list:1,2,-3/4".parse::<ScheduleKind>().unwrap(),
            ScheduleKind::Explicit(vec![rat(1), rat(2), frac(-3, 4)])
        );
        assert!("wave:3".parse::<ScheduleKind>().is_err());
        assert!("power".parse::<ScheduleKind>().is_err());
        assert_eq!(t_schedule(3, &ScheduleKind::Geometric(rat(3))).unwrap(), vec![rat(1), rat(3), rat(9)]);
        for label in ["power:6", "geom:5/2", "list:1,2,-3/4"] {
            assert_eq!(label.parse::<ScheduleKind>().unwrap().label(), label);
        }
    }
}
