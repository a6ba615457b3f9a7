//! Error probabilities of block codes used over a DMC, the optimal
//! single-shot estimation probability, and channel capacity.
//!
//! Every quantity here is computed by exhaustive enumeration, so each
//! entry point takes an enumeration cap and refuses work beyond it.
//! Message ids are 0-based in the API and 1-based in JSON.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::channel::Channel;
use crate::error::{Error, Result};
use crate::geometry::Distribution;

/// Default bound on the number of enumerated tuples or encoders.
pub const DEFAULT_CODING_CAP: u64 = 1_000_000;

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn pow_sat(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

pub(crate) fn check_cap(needed: u128, cap: u64) -> Result<()> {
    if needed > cap as u128 {
        Err(Error::CapExceeded { needed, cap })
    } else {
        Ok(())
    }
}

/// Symbols of tuple `index` over an alphabet of size `base`, first symbol
/// most significant.
pub fn tuple_digits(mut index: usize, base: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    out
}

pub fn tuple_index(digits: &[usize], base: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * base + d)
}

fn tuple_key(digits: &[usize]) -> String {
    digits.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// Likelihood of every output tuple given the input tuple `x`, indexed by
/// [`tuple_index`].
fn tuple_likelihoods(w: &Channel, x: &[usize]) -> Vec<f64> {
    let mut probs = vec![1.0];
    for &xi in x {
        let row = w.row(xi).probs();
        probs = probs
            .iter()
            .flat_map(|&p| row.iter().map(move |&r| p * r))
            .collect();
    }
    probs
}

/// An `(n, M)`-decoder: a total map from output `n`-tuples to messages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoder {
    n: usize,
    message_count: usize,
    output_size: usize,
    table: Vec<usize>,
}

impl Decoder {
    /// `table[i]` is the message decoded from the tuple with index `i`.
    pub fn new(n: usize, message_count: usize, output_size: usize, table: Vec<usize>) -> Result<Self> {
        if n == 0 || message_count == 0 || output_size == 0 {
            return Err(Error::Precondition(
                "decoder needs positive blocklength, message count and alphabet".into(),
            ));
        }
        let expected = pow_sat(output_size, n);
        if table.len() as u128 != expected {
            return Err(Error::Malformed(format!(
                "decoder table has {} entries, expected {expected}",
                table.len()
            )));
        }
        if let Some((i, m)) = table.iter().enumerate().find(|(_, &m)| m >= message_count) {
            return Err(Error::Malformed(format!(
                "tuple {} decodes to message {} of {message_count}",
                tuple_key(&tuple_digits(i, output_size, n)),
                m + 1
            )));
        }
        Ok(Decoder {
            n,
            message_count,
            output_size,
            table,
        })
    }

    /// Single-letter decoder given by a symbol-to-message map.
    pub fn single_letter(map: Vec<usize>, message_count: usize) -> Result<Self> {
        let len = map.len();
        Decoder::new(1, message_count, len, map)
    }

    pub fn blocklength(&self) -> usize {
        self.n
    }

    pub fn message_count(&self) -> usize {
        self.message_count
    }

    pub fn output_size(&self) -> usize {
        self.output_size
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn decode(&self, y: &[usize]) -> usize {
        self.table[tuple_index(y, self.output_size)]
    }

    /// Rate in nats per channel use.
    pub fn rate(&self) -> f64 {
        (self.message_count as f64).ln() / self.n as f64
    }
}

impl Serialize for Decoder {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let table: BTreeMap<String, usize> = self
            .table
            .iter()
            .enumerate()
            .map(|(i, &m)| (tuple_key(&tuple_digits(i, self.output_size, self.n)), m + 1))
            .collect();
        CodeJson {
            n: self.n,
            message_count: self.message_count,
            table,
        }
        .serialize(ser)
    }
}

#[derive(Serialize, Deserialize)]
struct CodeJson<T> {
    n: usize,
    #[serde(rename = "M")]
    message_count: usize,
    table: BTreeMap<String, T>,
}

fn parse_key(key: &str) -> Result<Vec<usize>> {
    key.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Malformed(format!("bad tuple key {key:?}")))
        })
        .collect()
}

impl Decoder {
    fn from_json(raw: CodeJson<usize>) -> Result<Self> {
        let CodeJson {
            n,
            message_count,
            table,
        } = raw;
        if n == 0 {
            return Err(Error::Malformed("decoder blocklength must be positive".into()));
        }
        let entries = table.len();
        let output_size = (1..=entries)
            .find(|&k| pow_sat(k, n) >= entries as u128)
            .filter(|&k| pow_sat(k, n) == entries as u128)
            .ok_or_else(|| {
                Error::Malformed(format!("{entries} table entries is not a perfect {n}-th power"))
            })?;
        let mut dense = vec![usize::MAX; entries];
        for (key, id) in table {
            let digits = parse_key(&key)?;
            if digits.len() != n || digits.iter().any(|&d| d >= output_size) {
                return Err(Error::Malformed(format!("tuple key {key:?} out of range")));
            }
            if id == 0 {
                return Err(Error::Malformed("message ids start at 1".into()));
            }
            dense[tuple_index(&digits, output_size)] = id - 1;
        }
        if dense.contains(&usize::MAX) {
            return Err(Error::Malformed("decoder table is not total".into()));
        }
        Decoder::new(n, message_count, output_size, dense)
    }
}

impl<'de> Deserialize<'de> for Decoder {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        Decoder::from_json(CodeJson::deserialize(de)?).map_err(serde::de::Error::custom)
    }
}

/// An `(n, M)`-encoder: one input `n`-tuple per message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoder {
    n: usize,
    codewords: Vec<Vec<usize>>,
}

impl Encoder {
    pub fn new(codewords: Vec<Vec<usize>>) -> Result<Self> {
        let n = codewords.first().map(Vec::len).ok_or(Error::Empty("codebook"))?;
        if n == 0 {
            return Err(Error::Precondition("encoder blocklength must be positive".into()));
        }
        if codewords.iter().any(|c| c.len() != n) {
            return Err(Error::Malformed("codewords have different lengths".into()));
        }
        Ok(Encoder { n, codewords })
    }

    pub fn blocklength(&self) -> usize {
        self.n
    }

    pub fn message_count(&self) -> usize {
        self.codewords.len()
    }

    pub fn codewords(&self) -> &[Vec<usize>] {
        &self.codewords
    }

    pub fn encode(&self, message: usize) -> &[usize] {
        &self.codewords[message]
    }

    fn check_inputs(&self, input_size: usize) -> Result<()> {
        match self.codewords.iter().flatten().find(|&&x| x >= input_size) {
            Some(x) => Err(Error::AlphabetMismatch(format!(
                "codeword symbol {x} outside an input alphabet of {input_size}"
            ))),
            None => Ok(()),
        }
    }
}

impl Serialize for Encoder {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let table: BTreeMap<String, Vec<usize>> = self
            .codewords
            .iter()
            .enumerate()
            .map(|(m, c)| ((m + 1).to_string(), c.clone()))
            .collect();
        CodeJson {
            n: self.n,
            message_count: self.codewords.len(),
            table,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Encoder {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CodeJson::<Vec<usize>>::deserialize(de)?;
        let mut codewords = vec![None; raw.message_count];
        for (key, word) in raw.table {
            let m: usize = key
                .parse()
                .map_err(|_| D::Error::custom(format!("bad message id {key:?}")))?;
            if m == 0 || m > raw.message_count {
                return Err(D::Error::custom(format!("message id {m} out of range")));
            }
            if word.len() != raw.n {
                return Err(D::Error::custom(format!("codeword {m} has wrong length")));
            }
            codewords[m - 1] = Some(word);
        }
        let codewords: Option<Vec<_>> = codewords.into_iter().collect();
        let codewords = codewords.ok_or_else(|| D::Error::custom("encoder table is not total"))?;
        Encoder::new(codewords).map_err(D::Error::custom)
    }
}

/// Error probability of a decoder when each message is sent with its
/// likelihood-maximizing input tuple.
pub fn pe_decoder_ml(w: &Channel, d: &Decoder, cap: u64) -> Result<f64> {
    if d.output_size() != w.output_size() {
        return Err(Error::AlphabetMismatch(format!(
            "decoder reads {} output symbols, channel has {}",
            d.output_size(),
            w.output_size()
        )));
    }
    let inputs = pow_sat(w.input_size(), d.n);
    check_cap(inputs, cap)?;
    let mut best = vec![0.0f64; d.message_count];
    let mut bins = vec![0.0f64; d.message_count];
    for xi in 0..inputs as usize {
        let x = tuple_digits(xi, w.input_size(), d.n);
        bins.iter_mut().for_each(|b| *b = 0.0);
        for (yi, p) in tuple_likelihoods(w, &x).into_iter().enumerate() {
            bins[d.table[yi]] += p;
        }
        for (b, &v) in best.iter_mut().zip(&bins) {
            *b = b.max(v);
        }
    }
    let success: f64 = best.iter().sum::<f64>() / d.message_count as f64;
    Ok((1.0 - success).clamp(0.0, 1.0))
}

fn pe_from_likelihoods(rows: &[&[f64]]) -> f64 {
    let len = rows[0].len();
    let success: f64 = (0..len)
        .map(|y| rows.iter().map(|r| r[y]).fold(0.0, f64::max))
        .sum();
    (1.0 - success / rows.len() as f64).clamp(0.0, 1.0)
}

/// Error probability of an encoder under maximum-likelihood decoding.
pub fn pe_encoder(w: &Channel, e: &Encoder, cap: u64) -> Result<f64> {
    e.check_inputs(w.input_size())?;
    check_cap(pow_sat(w.output_size(), e.n), cap)?;
    let likelihoods: Vec<Vec<f64>> = e.codewords.iter().map(|c| tuple_likelihoods(w, c)).collect();
    let rows: Vec<&[f64]> = likelihoods.iter().map(Vec::as_slice).collect();
    Ok(pe_from_likelihoods(&rows))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimalCode {
    pub error_probability: f64,
    /// Lexicographically first optimal codebook with non-decreasing codeword
    /// indices.
    pub encoder: Encoder,
}

/// Smallest ML error probability over all `(n, M)`-encoders.
///
/// The error probability does not depend on the order of codewords, so
/// only non-decreasing codebooks are visited; the cap still bounds the
/// full count `|X|^(nM)`.
pub fn pe_opt(w: &Channel, n: usize, message_count: usize, cap: u64) -> Result<OptimalCode> {
    if n == 0 || message_count == 0 {
        return Err(Error::Precondition("blocklength and message count must be positive".into()));
    }
    check_cap(pow_sat(w.input_size(), n * message_count), cap)?;
    check_cap(pow_sat(w.output_size(), n), cap)?;
    let words = pow_sat(w.input_size(), n) as usize;
    let likelihoods: Vec<Vec<f64>> = (0..words)
        .map(|c| tuple_likelihoods(w, &tuple_digits(c, w.input_size(), n)))
        .collect();
    let mut book = vec![0usize; message_count];
    let mut best: Option<(f64, Vec<usize>)> = None;
    loop {
        let rows: Vec<&[f64]> = book.iter().map(|&c| likelihoods[c].as_slice()).collect();
        let pe = pe_from_likelihoods(&rows);
        if best.as_ref().is_none_or(|(b, _)| pe < *b) {
            best = Some((pe, book.clone()));
        }
        // Next non-decreasing sequence.
        let Some(pos) = (0..message_count).rev().find(|&i| book[i] + 1 < words) else {
            break;
        };
        let v = book[pos] + 1;
        book[pos..].iter_mut().for_each(|b| *b = v);
    }
    let (error_probability, book) = best.expect("at least one codebook");
    let encoder = Encoder::new(book.iter().map(|&c| tuple_digits(c, w.input_size(), n)).collect())?;
    Ok(OptimalCode {
        error_probability,
        encoder,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimation {
    pub success_probability: f64,
    /// Input symbol chosen for each value of `U`.
    pub encoder: Vec<usize>,
}

/// Best probability of recovering `U ~ p` through `w` followed by the fixed
/// estimator `d: Y -> U`, attained by a deterministic encoder.
pub fn pc(p: &Distribution, w: &Channel, d: &Channel) -> Result<Estimation> {
    if d.input_size() != w.output_size() {
        return Err(Error::AlphabetMismatch(format!(
            "estimator reads {} symbols, channel emits {}",
            d.input_size(),
            w.output_size()
        )));
    }
    if !d.has_default_input_labels() && d.input_labels() != w.output_labels() {
        return Err(Error::AlphabetMismatch(
            "estimator input labels differ from channel output labels".into(),
        ));
    }
    if p.len() != d.output_size() {
        return Err(Error::AlphabetMismatch(format!(
            "source has {} symbols, estimator emits {}",
            p.len(),
            d.output_size()
        )));
    }
    let mut value = 0.0;
    let mut encoder = Vec::with_capacity(p.len());
    for (u, &pu) in p.probs().iter().enumerate() {
        let (x, best) = w
            .rows()
            .iter()
            .map(|row| row.probs().iter().enumerate().map(|(y, wy)| wy * d.prob(u, y)).sum::<f64>())
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (x, v)| if v > acc.1 { (x, v) } else { acc });
        encoder.push(x);
        value += pu * best;
    }
    Ok(Estimation {
        success_probability: value.clamp(0.0, 1.0),
        encoder,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityResult {
    /// Mutual information of `input_distribution`, in nats.
    pub capacity: f64,
    /// Certified upper bound, in nats.
    pub upper_bound: f64,
    pub input_distribution: Vec<f64>,
    pub iterations: u64,
    pub converged: bool,
}

const CAPACITY_MAX_ITER: u64 = 2_000_000;

/// Relative entropies `D(W_x || q)` in nats.
fn divergences(w: &Channel, q: &[f64]) -> Vec<f64> {
    w.rows()
        .iter()
        .map(|row| {
            row.probs()
                .iter()
                .zip(q)
                .filter(|(&wy, _)| wy > 0.0)
                .map(|(&wy, &qy)| wy * (wy / qy).ln())
                .sum::<f64>()
                .max(0.0)
        })
        .collect()
}

/// Channel capacity in nats by alternating maximization from the uniform
/// input distribution.
///
/// Each step yields `I(p; W) <= C <= max_x D(W_x || pW)`; iteration stops once
/// the two bounds are within `tol`.
pub fn capacity(w: &Channel, tol: f64) -> Result<CapacityResult> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Precondition(format!("capacity tolerance must be positive, got {tol}")));
    }
    let nx = w.input_size();
    let mut p = vec![1.0 / nx as f64; nx];
    let mut iterations = 0;
    loop {
        let q: Vec<f64> = (0..w.output_size())
            .map(|y| p.iter().zip(w.rows()).map(|(px, r)| px * r.probs()[y]).sum())
            .collect();
        let div = divergences(w, &q);
        let lower: f64 = p.iter().zip(&div).map(|(px, d)| px * d).sum::<f64>().max(0.0);
        let upper = div.iter().copied().fold(0.0, f64::max).max(lower);
        let converged = upper - lower < tol;
        if converged || iterations >= CAPACITY_MAX_ITER {
            return Ok(CapacityResult {
                capacity: lower,
                upper_bound: upper,
                input_distribution: p,
                iterations,
                converged,
            });
        }
        // Shift by the max divergence to keep the exponentials bounded.
        let mut z = 0.0;
        for (px, d) in p.iter_mut().zip(&div) {
            *px *= (d - upper).exp();
            z += *px;
        }
        p.iter_mut().for_each(|px| *px /= z);
        iterations += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{compose, deterministic};

    const CAP: u64 = DEFAULT_CODING_CAP;

    fn bsc(p: f64) -> Channel {
        Channel::bsc(p).unwrap()
    }

    fn identity_decoder() -> Decoder {
        Decoder::single_letter(vec![0, 1], 2).unwrap()
    }

    #[test]
    fn decoder_error_examples() {
        let d = identity_decoder();
        assert_eq!(pe_decoder_ml(&Channel::identity(2), &d, CAP).unwrap(), 0.0);
        assert!((pe_decoder_ml(&bsc(0.1), &d, CAP).unwrap() - 0.1).abs() < 1e-15);
        let one = Decoder::new(2, 1, 2, vec![0; 4]).unwrap();
        assert!(pe_decoder_ml(&bsc(0.3), &one, CAP).unwrap().abs() < 1e-15);
    }

    #[test]
    fn decoder_error_checks() {
        let d = identity_decoder();
        assert!(matches!(
            pe_decoder_ml(&Channel::identity(3), &d, CAP),
            Err(Error::AlphabetMismatch(_))
        ));
        let big = Decoder::new(2, 2, 2, vec![0, 1, 1, 0]).unwrap();
        assert!(matches!(
            pe_decoder_ml(&Channel::validate(vec![vec![1.0, 0.0]; 5]).unwrap(), &big, 10),
            Err(Error::CapExceeded { needed: 25, cap: 10 })
        ));
    }

    #[test]
    fn repetition_decoder_by_hand() {
        // Majority is undefined for two symbols; decode "1" only on (1,1).
        let d = Decoder::new(2, 2, 2, vec![0, 0, 0, 1]).unwrap();
        // Message 1 best sent as (1,1): 0.81. Message 0 best sent as (0,0): 1 - 0.01.
        let pe = pe_decoder_ml(&bsc(0.1), &d, CAP).unwrap();
        assert!((pe - (1.0 - 0.5 * (0.81 + 0.99))).abs() < 1e-15);
    }

    #[test]
    fn encoder_error_examples() {
        let e = Encoder::new(vec![vec![0], vec![1]]).unwrap();
        assert_eq!(pe_encoder(&Channel::identity(2), &e, CAP).unwrap(), 0.0);
        assert!((pe_encoder(&bsc(0.1), &e, CAP).unwrap() - 0.1).abs() < 1e-15);
        let same = Encoder::new(vec![vec![1], vec![1]]).unwrap();
        assert!((pe_encoder(&bsc(0.1), &same, CAP).unwrap() - 0.5).abs() < 1e-15);
        let bad = Encoder::new(vec![vec![2]]).unwrap();
        assert!(matches!(pe_encoder(&bsc(0.1), &bad, CAP), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn optimal_code_examples() {
        assert_eq!(pe_opt(&Channel::identity(2), 1, 2, CAP).unwrap().error_probability, 0.0);
        assert!(pe_opt(&bsc(0.3), 2, 1, CAP).unwrap().error_probability.abs() < 1e-15);
        let best = pe_opt(&bsc(0.1), 1, 2, CAP).unwrap();
        assert!((best.error_probability - 0.1).abs() < 1e-15);
        assert_eq!(best.encoder.codewords(), &[vec![0], vec![1]]);
        assert!(matches!(
            pe_opt(&bsc(0.1), 4, 6, CAP),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn optimal_code_matches_full_enumeration() {
        let w = Channel::validate(vec![
            vec![0.5, 0.3, 0.2],
            vec![0.1, 0.1, 0.8],
            vec![0.3, 0.6, 0.1],
        ])
        .unwrap();
        let (n, m) = (1, 3);
        let brute = (0..27)
            .map(|k| {
                let book = tuple_digits(k, 3, m).into_iter().map(|c| vec![c]).collect();
                pe_encoder(&w, &Encoder::new(book).unwrap(), CAP).unwrap()
            })
            .fold(f64::INFINITY, f64::min);
        let got = pe_opt(&w, n, m, CAP).unwrap().error_probability;
        assert!((got - brute).abs() < 1e-15);
    }

    #[test]
    fn estimation_examples() {
        let p = Distribution::uniform(2);
        let id = Channel::identity(2);
        let r = pc(&p, &id, &id).unwrap();
        assert_eq!(r.success_probability, 1.0);
        assert_eq!(r.encoder, vec![0, 1]);
        let r = pc(&p, &bsc(0.1), &id).unwrap();
        assert!((r.success_probability - 0.9).abs() < 1e-15);

        let w = Channel::validate(vec![vec![0.2, 0.8], vec![0.6, 0.4]]).unwrap();
        let d = Channel::validate(vec![vec![0.7, 0.3], vec![0.1, 0.9]]).unwrap();
        let point = Distribution::unit(2, 0);
        let expected = (0.2f64 * 0.7 + 0.8 * 0.1).max(0.6 * 0.7 + 0.4 * 0.1);
        let r = pc(&point, &w, &d).unwrap();
        assert!((r.success_probability - expected).abs() < 1e-15);
        assert_eq!(r.encoder[0], 1);
    }

    #[test]
    fn estimation_shape_checks() {
        let p = Distribution::uniform(3);
        let id = Channel::identity(2);
        assert!(matches!(pc(&p, &id, &id), Err(Error::AlphabetMismatch(_))));
        assert!(matches!(
            pc(&Distribution::uniform(2), &Channel::identity(3), &id),
            Err(Error::AlphabetMismatch(_))
        ));
    }

    #[test]
    fn capacity_examples() {
        let ln2 = std::f64::consts::LN_2;
        let c = capacity(&bsc(0.0), 1e-9).unwrap();
        assert!((c.capacity - ln2).abs() < 1e-12);
        assert!(capacity(&bsc(0.5), 1e-9).unwrap().capacity.abs() < 1e-12);
        let h = 0.1 * (1.0f64 / 0.1).ln() + 0.9 * (1.0f64 / 0.9).ln();
        let c = capacity(&bsc(0.1), 1e-9).unwrap();
        assert!(c.converged);
        assert!((c.capacity - (ln2 - h)).abs() < 1e-9);
        assert!((c.capacity - 0.368).abs() < 1e-3);
    }

    #[test]
    fn capacity_of_asymmetric_channel_is_bracketed() {
        // Z-channel with crossover 1/2 has capacity ln(5/4).
        let z = Channel::validate(vec![vec![1.0, 0.0], vec![0.5, 0.5]]).unwrap();
        let c = capacity(&z, 1e-10).unwrap();
        assert!(c.converged);
        assert!((c.capacity - (1.25f64).ln()).abs() < 1e-9);
        assert!(c.capacity <= c.upper_bound);
    }

    #[test]
    fn capacity_ignores_relabeled_inputs() {
        let w = Channel::validate(vec![vec![0.7, 0.2, 0.1], vec![0.1, 0.3, 0.6]]).unwrap();
        let f = deterministic(&[1, 0, 0, 1], 2).unwrap();
        let a = capacity(&w, 1e-9).unwrap().capacity;
        let b = capacity(&compose(&w, &f).unwrap(), 1e-9).unwrap().capacity;
        assert!((a - b).abs() < 1e-8);
    }

    #[test]
    fn decoder_json_round_trip() {
        let d = Decoder::new(2, 3, 2, vec![0, 2, 1, 0]).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"n":2,"M":3,"table":{"0,0":1,"0,1":3,"1,0":2,"1,1":1}}"#);
        assert_eq!(serde_json::from_str::<Decoder>(&s).unwrap(), d);
        assert!(serde_json::from_str::<Decoder>(r#"{"n":2,"M":3,"table":{"0,0":1,"0,1":3,"1,0":2}}"#).is_err());
        assert!(serde_json::from_str::<Decoder>(r#"{"n":1,"M":1,"table":{"0":1,"1":2}}"#).is_err());
    }

    #[test]
    fn encoder_json_round_trip() {
        let e = Encoder::new(vec![vec![0, 1], vec![1, 1], vec![2, 0]]).unwrap();
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"n":2,"M":3,"table":{"1":[0,1],"2":[1,1],"3":[2,0]}}"#);
        assert_eq!(serde_json::from_str::<Encoder>(&s).unwrap(), e);
        assert!(serde_json::from_str::<Encoder>(r#"{"n":2,"M":2,"table":{"1":[0,1]}}"#).is_err());
    }
}
