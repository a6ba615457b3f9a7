//! Discrete memoryless channels as row-stochastic matrices with labeled
//! alphabets.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::geometry::{l1, Distribution};

/// A symbol of a channel alphabet.
///
/// Sum alphabets tag each symbol with its side, product alphabets pair
/// symbols. In JSON an index is a number, a name is a string, a tagged
/// symbol is `{"left": ..}` or `{"right": ..}` and a pair is a two-element
/// array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Index(i64),
    Name(String),
    Left(Box<Label>),
    Right(Box<Label>),
    Pair(Box<Label>, Box<Label>),
}

impl Label {
    pub fn to_json(&self) -> Value {
        match self {
            Label::Index(i) => Value::from(*i),
            Label::Name(s) => Value::from(s.clone()),
            Label::Left(l) => serde_json::json!({ "left": l.to_json() }),
            Label::Right(l) => serde_json::json!({ "right": l.to_json() }),
            Label::Pair(a, b) => Value::Array(vec![a.to_json(), b.to_json()]),
        }
    }

    pub fn from_json(v: &Value) -> Result<Label> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(Label::Index)
                .ok_or_else(|| Error::Malformed(format!("label {n} is not an integer"))),
            Value::String(s) => Ok(Label::Name(s.clone())),
            Value::Array(items) if items.len() == 2 => Ok(Label::Pair(
                Box::new(Label::from_json(&items[0])?),
                Box::new(Label::from_json(&items[1])?),
            )),
            Value::Object(map) if map.len() == 1 => {
                let (k, inner) = map.iter().next().expect("one entry");
                let inner = Box::new(Label::from_json(inner)?);
                match k.as_str() {
                    "left" => Ok(Label::Left(inner)),
                    "right" => Ok(Label::Right(inner)),
                    other => Err(Error::Malformed(format!("unknown label tag {other:?}"))),
                }
            }
            other => Err(Error::Malformed(format!("unsupported label {other}"))),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Index(i) => write!(f, "{i}"),
            Label::Name(s) => write!(f, "{s}"),
            Label::Left(l) => write!(f, "L:{l}"),
            Label::Right(l) => write!(f, "R:{l}"),
            Label::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(de)?;
        Label::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// `0..n` as index labels.
pub fn index_labels(n: usize) -> Vec<Label> {
    (0..n as i64).map(Label::Index).collect()
}

/// Disjoint union of two alphabets, left block first.
pub fn sum_alphabet(left: &[Label], right: &[Label]) -> Vec<Label> {
    left.iter()
        .map(|l| Label::Left(Box::new(l.clone())))
        .chain(right.iter().map(|l| Label::Right(Box::new(l.clone()))))
        .collect()
}

/// Cartesian product of two alphabets, second coordinate varying fastest.
pub fn product_alphabet(first: &[Label], second: &[Label]) -> Vec<Label> {
    first
        .iter()
        .flat_map(|a| {
            second
                .iter()
                .map(move |b| Label::Pair(Box::new(a.clone()), Box::new(b.clone())))
        })
        .collect()
}

fn check_distinct(labels: &[Label], what: &str) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l) {
            return Err(Error::InvalidChannel(format!("duplicate {what} label {l}")));
        }
    }
    Ok(())
}

/// A row-stochastic matrix `W(y|x)` with labeled alphabets.
///
/// Inputs are addressed by position `0..input_size`; their labels are kept
/// as metadata only.
#[derive(Clone, Debug, PartialEq)]
pub struct Channel {
    input_labels: Vec<Label>,
    output_labels: Vec<Label>,
    rows: Vec<Distribution>,
}

impl Channel {
    /// Validates a raw matrix. Output symbols get index labels.
    pub fn validate(raw: Vec<Vec<f64>>) -> Result<Channel> {
        let outputs = raw.first().map_or(0, Vec::len);
        Channel::with_labels(index_labels(outputs), raw)
    }

    pub fn with_labels(output_labels: Vec<Label>, raw: Vec<Vec<f64>>) -> Result<Channel> {
        if raw.is_empty() {
            return Err(Error::InvalidChannel("channel needs at least one input".into()));
        }
        if output_labels.is_empty() {
            return Err(Error::InvalidChannel("channel needs at least one output".into()));
        }
        check_distinct(&output_labels, "output")?;
        let rows = raw
            .into_iter()
            .enumerate()
            .map(|(x, row)| {
                if row.len() != output_labels.len() {
                    return Err(Error::InvalidChannel(format!(
                        "row {x} has {} entries, expected {}",
                        row.len(),
                        output_labels.len()
                    )));
                }
                Distribution::new(row).map_err(|e| Error::InvalidChannel(format!("row {x}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Channel {
            input_labels: index_labels(rows.len()),
            output_labels,
            rows,
        })
    }

    /// Builds a channel from rows that are already distributions.
    pub fn from_distributions(output_labels: Vec<Label>, rows: Vec<Distribution>) -> Result<Channel> {
        if rows.is_empty() {
            return Err(Error::InvalidChannel("channel needs at least one input".into()));
        }
        check_distinct(&output_labels, "output")?;
        if let Some((x, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != output_labels.len()) {
            return Err(Error::InvalidChannel(format!(
                "row {x} has {} entries, expected {}",
                r.len(),
                output_labels.len()
            )));
        }
        Ok(Channel {
            input_labels: index_labels(rows.len()),
            output_labels,
            rows,
        })
    }

    pub fn with_input_labels(mut self, labels: Vec<Label>) -> Result<Channel> {
        if labels.len() != self.rows.len() {
            return Err(Error::InvalidChannel(format!(
                "{} input labels for {} inputs",
                labels.len(),
                self.rows.len()
            )));
        }
        check_distinct(&labels, "input")?;
        self.input_labels = labels;
        Ok(self)
    }

    pub fn identity(n: usize) -> Channel {
        deterministic(&(0..n).collect::<Vec<_>>(), n).expect("identity map is in range")
    }

    /// Binary symmetric channel with crossover probability `p`.
    pub fn bsc(p: f64) -> Result<Channel> {
        Channel::validate(vec![vec![1.0 - p, p], vec![p, 1.0 - p]])
    }

    pub fn input_size(&self) -> usize {
        self.rows.len()
    }

    pub fn output_size(&self) -> usize {
        self.output_labels.len()
    }

    pub fn input_labels(&self) -> &[Label] {
        &self.input_labels
    }

    pub fn output_labels(&self) -> &[Label] {
        &self.output_labels
    }

    pub fn rows(&self) -> &[Distribution] {
        &self.rows
    }

    pub fn row(&self, x: usize) -> &Distribution {
        &self.rows[x]
    }

    /// `W(y|x)`.
    pub fn prob(&self, y: usize, x: usize) -> f64 {
        self.rows[x].probs()[y]
    }

    pub fn matrix(&self) -> Vec<Vec<f64>> {
        self.rows.iter().map(|r| r.probs().to_vec()).collect()
    }

    pub(crate) fn has_default_input_labels(&self) -> bool {
        self.input_labels
            .iter()
            .enumerate()
            .all(|(i, l)| *l == Label::Index(i as i64))
    }

    pub(crate) fn same_output_alphabet(&self, other: &Channel) -> Result<()> {
        if self.output_labels != other.output_labels {
            return Err(Error::AlphabetMismatch(format!(
                "output alphabets differ ({} vs {} symbols)",
                self.output_size(),
                other.output_size()
            )));
        }
        Ok(())
    }
}

/// `outer ∘ inner`: `(V∘W)(z|x) = sum_y V(z|y) W(y|x)`.
///
/// When `outer` carries explicit input labels they must equal the output
/// labels of `inner`.
pub fn compose(outer: &Channel, inner: &Channel) -> Result<Channel> {
    if outer.input_size() != inner.output_size() {
        return Err(Error::AlphabetMismatch(format!(
            "cannot feed {} outputs into a channel with {} inputs",
            inner.output_size(),
            outer.input_size()
        )));
    }
    if !outer.has_default_input_labels() && outer.input_labels != inner.output_labels {
        return Err(Error::AlphabetMismatch(
            "input labels of the outer channel differ from output labels of the inner one".into(),
        ));
    }
    let rows = inner
        .rows
        .iter()
        .map(|w| {
            let mut out = vec![0.0; outer.output_size()];
            for (y, &wy) in w.probs().iter().enumerate() {
                if wy == 0.0 {
                    continue;
                }
                for (o, v) in out.iter_mut().zip(outer.rows[y].probs()) {
                    *o += v * wy;
                }
            }
            Distribution::new(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Channel {
        input_labels: inner.input_labels.clone(),
        output_labels: outer.output_labels.clone(),
        rows,
    })
}

/// The deterministic channel `D_f` for `f: [n] -> [output_size]`.
pub fn deterministic(f: &[usize], output_size: usize) -> Result<Channel> {
    if let Some((x, &y)) = f.iter().enumerate().find(|(_, &y)| y >= output_size) {
        return Err(Error::InvalidChannel(format!(
            "map sends input {x} to {y}, outside an alphabet of size {output_size}"
        )));
    }
    let rows = f.iter().map(|&y| Distribution::unit(output_size, y)).collect();
    Channel::from_distributions(index_labels(output_size), rows)
}

/// `d(W, W') = 1/2 max_x sum_y |W'(y|x) - W(y|x)|`.
pub fn channel_distance(a: &Channel, b: &Channel) -> Result<f64> {
    if a.input_size() != b.input_size() || a.output_size() != b.output_size() {
        return Err(Error::DimensionMismatch(format!(
            "channels are {}x{} and {}x{}",
            a.input_size(),
            a.output_size(),
            b.input_size(),
            b.output_size()
        )));
    }
    Ok(a.rows
        .iter()
        .zip(&b.rows)
        .map(|(r, s)| 0.5 * l1(r.probs(), s.probs()))
        .fold(0.0, f64::max))
}

/// Block-diagonal sum `W1 ⊕ W2` over tagged alphabets.
pub fn channel_sum(w1: &Channel, w2: &Channel) -> Channel {
    let (m1, m2) = (w1.output_size(), w2.output_size());
    let left = w1.rows.iter().map(|r| {
        let mut v = r.probs().to_vec();
        v.resize(m1 + m2, 0.0);
        Distribution::from_raw(v)
    });
    let right = w2.rows.iter().map(|r| {
        let mut v = vec![0.0; m1];
        v.extend_from_slice(r.probs());
        Distribution::from_raw(v)
    });
    Channel {
        input_labels: sum_alphabet(&w1.input_labels, &w2.input_labels),
        output_labels: sum_alphabet(&w1.output_labels, &w2.output_labels),
        rows: left.chain(right).collect(),
    }
}

/// Product `W1 ⊗ W2`; row `(x1, x2)` sits at `x1 * |X2| + x2`.
pub fn channel_product(w1: &Channel, w2: &Channel) -> Channel {
    let rows = w1
        .rows
        .iter()
        .flat_map(|a| w2.rows.iter().map(move |b| a.product(b)))
        .collect();
    Channel {
        input_labels: product_alphabet(&w1.input_labels, &w2.input_labels),
        output_labels: product_alphabet(&w1.output_labels, &w2.output_labels),
        rows,
    }
}

#[derive(Serialize, Deserialize)]
struct ChannelJson {
    input_size: usize,
    output_labels: Vec<Label>,
    rows: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    input_labels: Option<Vec<Label>>,
}

impl Serialize for Channel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChannelJson {
            input_size: self.input_size(),
            output_labels: self.output_labels.clone(),
            rows: self.matrix(),
            input_labels: (!self.has_default_input_labels()).then(|| self.input_labels.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Channel {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ChannelJson::deserialize(de)?;
        if raw.input_size != raw.rows.len() {
            return Err(D::Error::custom(format!(
                "input_size is {} but {} rows were given",
                raw.input_size,
                raw.rows.len()
            )));
        }
        let ch = Channel::with_labels(raw.output_labels, raw.rows).map_err(D::Error::custom)?;
        match raw.input_labels {
            Some(labels) => ch.with_input_labels(labels).map_err(D::Error::custom),
            None => Ok(ch),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bsc(p: f64) -> Channel {
        Channel::bsc(p).unwrap()
    }

    fn close(a: &Channel, b: &Channel, eps: f64) -> bool {
        channel_distance(a, b).unwrap() <= eps
    }

    #[test]
    fn validate_examples() {
        let id = Channel::validate(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(id, Channel::identity(2));
        let one = Channel::validate(vec![vec![0.5, 0.5]]).unwrap();
        assert_eq!(one.input_size(), 1);
        let err = Channel::validate(vec![vec![0.6, 0.6]]).unwrap_err();
        assert!(err.to_string().contains("1.2"), "{err}");
    }

    #[test]
    fn validate_rejects_negative_and_ragged() {
        assert!(Channel::validate(vec![vec![1.1, -0.1]]).is_err());
        assert!(Channel::validate(vec![vec![1.0, 0.0], vec![1.0]]).is_err());
        assert!(Channel::validate(vec![]).is_err());
        assert!(Channel::with_labels(
            vec![Label::Index(0), Label::Index(0)],
            vec![vec![0.5, 0.5]]
        )
        .is_err());
    }

    #[test]
    fn validate_renormalizes_small_deviation() {
        let ch = Channel::validate(vec![vec![0.3, 0.7 + 4e-10]]).unwrap();
        let s: f64 = ch.row(0).probs().iter().sum();
        assert!((s - 1.0).abs() < 1e-15);
        assert!(Channel::validate(vec![vec![0.3, 0.7 + 4e-9]]).is_err());
    }

    #[test]
    fn compose_examples() {
        let w = bsc(0.3);
        assert_eq!(compose(&Channel::identity(2), &w).unwrap(), w);

        let f = [1, 0, 1];
        let g = [2, 0];
        let gf: Vec<usize> = f.iter().map(|&x| g[x]).collect();
        let lhs = compose(&deterministic(&g, 3).unwrap(), &deterministic(&f, 2).unwrap()).unwrap();
        assert_eq!(lhs, deterministic(&gf, 3).unwrap());

        let c = compose(&bsc(0.2), &bsc(0.1)).unwrap();
        assert!(close(&c, &bsc(0.26), 1e-15));
    }

    #[test]
    fn compose_checks_alphabets() {
        assert!(compose(&Channel::identity(3), &bsc(0.1)).is_err());
        let labeled = Channel::identity(2)
            .with_input_labels(vec![Label::Name("a".into()), Label::Name("b".into())])
            .unwrap();
        assert!(matches!(compose(&labeled, &bsc(0.1)), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn deterministic_examples() {
        assert_eq!(deterministic(&[0, 1], 2).unwrap(), Channel::identity(2));
        let c = deterministic(&[1, 1, 1], 2).unwrap();
        assert!(c.rows().iter().all(|r| r.probs() == [0.0, 1.0]));
        let swap = deterministic(&[1, 0], 2).unwrap();
        assert_eq!(swap.matrix(), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert!(deterministic(&[0, 2], 2).is_err());
    }

    #[test]
    fn distance_examples() {
        let w = bsc(0.37);
        assert_eq!(channel_distance(&w, &w).unwrap(), 0.0);
        let swap = deterministic(&[1, 0], 2).unwrap();
        assert_eq!(channel_distance(&Channel::identity(2), &swap).unwrap(), 1.0);
        let d = channel_distance(&bsc(0.1), &bsc(0.2)).unwrap();
        assert!((d - 0.1).abs() < 1e-15);
        assert!(channel_distance(&Channel::identity(2), &Channel::identity(3)).is_err());
    }

    #[test]
    fn sum_examples() {
        let t = Channel::validate(vec![vec![1.0]]).unwrap();
        let s = channel_sum(&t, &t);
        assert_eq!(s.matrix(), vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert_eq!(
            s.output_labels(),
            &[Label::Left(Box::new(Label::Index(0))), Label::Right(Box::new(Label::Index(0)))]
        );

        let (a, b) = (bsc(0.1), bsc(0.2));
        let s = channel_sum(&a, &b);
        assert_eq!(s.input_size(), 4);
        assert_eq!(s.output_size(), 4);
        for x in 0..2 {
            assert_eq!(&s.row(x).probs()[..2], a.row(x).probs());
            assert_eq!(&s.row(x).probs()[2..], &[0.0, 0.0]);
            assert_eq!(&s.row(x + 2).probs()[..2], &[0.0, 0.0]);
            assert_eq!(&s.row(x + 2).probs()[2..], b.row(x).probs());
        }
    }

    #[test]
    fn product_examples() {
        let t = Channel::validate(vec![vec![1.0]]).unwrap();
        let w = bsc(0.3);
        assert_eq!(channel_product(&w, &t).matrix(), w.matrix());

        let id = channel_product(&Channel::identity(2), &Channel::identity(3));
        assert_eq!(id.matrix(), Channel::identity(6).matrix());

        let p = channel_product(&bsc(0.1), &bsc(0.1));
        assert!((p.prob(0, 0) - 0.81).abs() < 1e-15);
        assert_eq!(p.output_size(), 4);
    }

    #[test]
    fn json_shape() {
        let w = bsc(0.25);
        let v = serde_json::to_value(&w).unwrap();
        assert_eq!(v["input_size"], 2);
        assert_eq!(v["output_labels"], serde_json::json!([0, 1]));
        assert!(v.get("input_labels").is_none());
        let back: Channel = serde_json::from_value(v).unwrap();
        assert_eq!(back, w);

        let s = channel_product(&w, &channel_sum(&w, &w));
        let back: Channel = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn json_rejects_inconsistent_sizes() {
        let bad = r#"{"input_size": 3, "output_labels": [0, 1], "rows": [[1, 0], [0, 1]]}"#;
        assert!(serde_json::from_str::<Channel>(bad).is_err());
        let bad = r#"{"input_size": 1, "output_labels": [0, 1], "rows": [[0.6, 0.6]]}"#;
        assert!(serde_json::from_str::<Channel>(bad).is_err());
    }
}
