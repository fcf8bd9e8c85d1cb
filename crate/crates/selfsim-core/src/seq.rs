//! Sign sequences over {-1, +1}, validated pairs and enumeration.
//!
//! A pair of distinct equal-length sequences with the same number of `+1`
//! entries indexes one overlap curve. Pairs are deduplicated under the
//! symmetry group of order four generated by swapping the two sequences
//! (which negates the curve polynomial) and negating every entry (which
//! reflects the curve across the diagonal).

use alloc::vec::Vec;

use crate::poly;

/// Hard cap on sequence length accepted by [`enumerate_pairs`].
pub const MAX_ENUMERATION_LEN: usize = 12;

/// Shortest sequence length for which curve pairs are defined.
pub const MIN_PAIR_LEN: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PairError {
    #[error("sequence is empty")]
    Empty,
    #[error("invalid symbol {0:?}, expected '+' or '-'")]
    InvalidSymbol(char),
    #[error("invalid entry {0}, expected -1 or +1")]
    InvalidEntry(i8),
    #[error("sequence lengths differ: {s} vs {t}")]
    LengthMismatch { s: usize, t: usize },
    #[error("sequence length {0} is below the minimum {MIN_PAIR_LEN}")]
    TooShort(usize),
    #[error("the two sequences are equal")]
    EqualSequences,
    #[error("one-counts differ: {s} vs {t}")]
    UnequalOneCounts { s: u32, t: u32 },
    #[error("curve polynomial is identically zero")]
    DegenerateCurve,
    #[error("length {n} exceeds the enumeration limit {max}")]
    LimitExceeded { n: usize, max: usize },
}

/// A finite sequence over {-1, +1} with its prefix one-counts precomputed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SignSeq {
    entries: Vec<i8>,
    prefix_ones: Vec<u32>,
}

impl SignSeq {
    pub fn new(entries: Vec<i8>) -> Result<Self, PairError> {
        if entries.is_empty() {
            return Err(PairError::Empty);
        }
        if let Some(&bad) = entries.iter().find(|&&v| v != 1 && v != -1) {
            return Err(PairError::InvalidEntry(bad));
        }
        let mut prefix_ones = Vec::with_capacity(entries.len());
        let mut ones = 0u32;
        for &v in &entries {
            if v == 1 {
                ones += 1;
            }
            prefix_ones.push(ones);
        }
        Ok(Self { entries, prefix_ones })
    }

    /// Parses a compact string such as `"+---+"` (one character per entry).
    pub fn parse(text: &str) -> Result<Self, PairError> {
        let mut entries = Vec::with_capacity(text.len());
        for c in text.chars() {
            match c {
                '+' => entries.push(1),
                '-' => entries.push(-1),
                other => return Err(PairError::InvalidSymbol(other)),
            }
        }
        Self::new(entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Entries as sign values, each exactly -1 or +1.
    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    /// Prefix one-counts: the k-th element is the number of `+1` among the
    /// first k entries.
    pub fn prefix_ones(&self) -> &[u32] {
        &self.prefix_ones
    }

    /// Both prefix count lists: `+1` counts and `-1` counts per prefix.
    pub fn prefix_counts(&self) -> (Vec<u32>, Vec<u32>) {
        let minus = self
            .prefix_ones
            .iter()
            .enumerate()
            .map(|(i, &ones)| (i as u32 + 1) - ones)
            .collect();
        (self.prefix_ones.clone(), minus)
    }

    /// Total number of `+1` entries.
    pub fn ones(&self) -> u32 {
        *self.prefix_ones.last().expect("nonempty")
    }

    /// Entry-wise negation.
    pub fn negated(&self) -> SignSeq {
        let entries = self.entries.iter().map(|&v| -v).collect();
        Self::new(entries).expect("negation of a valid sequence is valid")
    }
}

impl core::fmt::Display for SignSeq {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for &v in &self.entries {
            f.write_str(if v == 1 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// A validated pair (s, t) indexing an overlap curve.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SeqPair {
    s: SignSeq,
    t: SignSeq,
}

impl SeqPair {
    /// Validates a pair: equal lengths, n >= 3, s != t, equal one-counts
    /// and a curve polynomial that is not identically zero.
    pub fn new(s: SignSeq, t: SignSeq) -> Result<Self, PairError> {
        if s.len() != t.len() {
            return Err(PairError::LengthMismatch { s: s.len(), t: t.len() });
        }
        if s.len() < MIN_PAIR_LEN {
            return Err(PairError::TooShort(s.len()));
        }
        if s.entries == t.entries {
            return Err(PairError::EqualSequences);
        }
        if s.ones() != t.ones() {
            return Err(PairError::UnequalOneCounts { s: s.ones(), t: t.ones() });
        }
        let pair = Self { s, t };
        if poly::build_curve_poly(&pair).is_zero() {
            return Err(PairError::DegenerateCurve);
        }
        Ok(pair)
    }

    /// Parses both sequences from compact `+`/`-` strings.
    pub fn parse(s: &str, t: &str) -> Result<Self, PairError> {
        Self::new(SignSeq::parse(s)?, SignSeq::parse(t)?)
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    pub fn s(&self) -> &SignSeq {
        &self.s
    }

    pub fn t(&self) -> &SignSeq {
        &self.t
    }

    /// SWAP symmetry: (s, t) -> (t, s). Negates the curve polynomial.
    pub fn swapped(&self) -> SeqPair {
        Self { s: self.t.clone(), t: self.s.clone() }
    }

    /// FLIP symmetry: (s, t) -> (-s, -t). Reflects the curve across y = x.
    pub fn flipped(&self) -> SeqPair {
        Self { s: self.s.negated(), t: self.t.negated() }
    }

    /// The four orbit members under {id, SWAP, FLIP, SWAP∘FLIP}, in that
    /// order. Members may repeat when t = -s.
    pub fn orbit(&self) -> [SeqPair; 4] {
        let flip = self.flipped();
        [self.clone(), self.swapped(), flip.clone(), flip.swapped()]
    }

    /// Number of distinct pairs in the symmetry orbit (2 or 4).
    pub fn orbit_size(&self) -> usize {
        // Only SWAP∘FLIP can fix a valid pair, exactly when t = -s.
        if self.t.entries == self.s.negated().entries {
            2
        } else {
            4
        }
    }

    /// Lexicographically smallest orbit member, comparing the concatenation
    /// of s then t with -1 < +1.
    pub fn canonical_form(&self) -> SeqPair {
        self.orbit()
            .into_iter()
            .min_by(|a, b| a.concat_key().cmp(b.concat_key()))
            .expect("orbit is nonempty")
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical_form()
    }

    fn concat_key(&self) -> impl Iterator<Item = i8> + '_ {
        self.s.entries.iter().chain(self.t.entries.iter()).copied()
    }
}

/// Outcome of [`enumerate_pairs`]: canonical pairs plus the number of
/// symmetry classes rejected for a vanishing curve polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairEnumeration {
    /// One canonical representative per symmetry class, in lexicographic
    /// order on the concatenation of s then t.
    pub pairs: Vec<SeqPair>,
    /// Symmetry classes whose curve polynomial collapsed to zero.
    pub degenerate: usize,
}

impl PairEnumeration {
    /// Total number of valid ordered pairs covered by the canonical classes.
    pub fn ordered_count(&self) -> usize {
        self.pairs.iter().map(SeqPair::orbit_size).sum()
    }
}

/// Enumerates every valid pair of length `n` up to symmetry.
pub fn enumerate_pairs(n: usize) -> Result<PairEnumeration, PairError> {
    if n < MIN_PAIR_LEN {
        return Err(PairError::TooShort(n));
    }
    if n > MAX_ENUMERATION_LEN {
        return Err(PairError::LimitExceeded { n, max: MAX_ENUMERATION_LEN });
    }

    // Group the 2^n sequences by one-count; only equal-count pairs qualify.
    let mut buckets: Vec<Vec<Vec<i8>>> = alloc::vec![Vec::new(); n + 1];
    for mask in 0u32..(1u32 << n) {
        let mut entries = Vec::with_capacity(n);
        for k in 0..n {
            entries.push(if mask & (1 << k) != 0 { 1 } else { -1 });
        }
        buckets[mask.count_ones() as usize].push(entries);
    }

    let mut seen = alloc::collections::BTreeSet::new();
    for bucket in &buckets {
        let negated: Vec<Vec<i8>> = bucket
            .iter()
            .map(|s| s.iter().map(|&v| -v).collect())
            .collect();
        for (i, s) in bucket.iter().enumerate() {
            for (j, t) in bucket.iter().enumerate() {
                if i == j {
                    continue;
                }
                let candidates = [
                    (s, t),
                    (t, s),
                    (&negated[i], &negated[j]),
                    (&negated[j], &negated[i]),
                ];
                let min = candidates
                    .into_iter()
                    .min_by(|a, b| {
                        a.0.iter().chain(a.1.iter()).cmp(b.0.iter().chain(b.1.iter()))
                    })
                    .expect("four candidates");
                seen.insert((min.0.clone(), min.1.clone()));
            }
        }
    }

    let mut pairs = Vec::with_capacity(seen.len());
    let mut degenerate = 0usize;
    for (s, t) in seen {
        let s = SignSeq::new(s).expect("enumerated entries are signs");
        let t = SignSeq::new(t).expect("enumerated entries are signs");
        match SeqPair::new(s, t) {
            Ok(pair) => pairs.push(pair),
            Err(PairError::DegenerateCurve) => degenerate += 1,
            Err(other) => unreachable!("enumeration produced an invalid pair: {other}"),
        }
    }
    Ok(PairEnumeration { pairs, degenerate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn seq(entries: &[i8]) -> SignSeq {
        SignSeq::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn prefix_counts_match_direct_count() {
        let s = seq(&[1, -1, -1, -1, 1]);
        let (ones, minus) = s.prefix_counts();
        assert_eq!(ones, vec![1, 1, 1, 1, 2]);
        assert_eq!(minus, vec![0, 1, 2, 3, 3]);

        let s = seq(&[1, 1, 1]);
        let (ones, minus) = s.prefix_counts();
        assert_eq!(ones, vec![1, 2, 3]);
        assert_eq!(minus, vec![0, 0, 0]);

        let s = seq(&[-1, 1, 1, -1, -1]);
        let (ones, minus) = s.prefix_counts();
        assert_eq!(ones, vec![0, 1, 2, 2, 2]);
        assert_eq!(minus, vec![1, 1, 1, 2, 3]);
    }

    #[test]
    fn parse_and_display_round_trip() {
        let s = SignSeq::parse("+---+").unwrap();
        assert_eq!(s.entries(), &[1, -1, -1, -1, 1]);
        assert_eq!(s.to_string(), "+---+");
        assert_eq!(SignSeq::parse("x"), Err(PairError::InvalidSymbol('x')));
        assert_eq!(SignSeq::parse(""), Err(PairError::Empty));
    }

    #[test]
    fn pair_validation_accepts_the_length_five_example() {
        let pair = SeqPair::parse("+---+", "-++--").unwrap();
        assert_eq!(pair.n(), 5);
        assert_eq!(pair.s().ones(), 2);
        assert_eq!(pair.t().ones(), 2);
    }

    #[test]
    fn pair_validation_rejections() {
        let a = seq(&[1, -1, 1]);
        assert_eq!(
            SeqPair::new(a.clone(), a.clone()),
            Err(PairError::EqualSequences)
        );
        assert_eq!(
            SeqPair::new(seq(&[1, 1, -1]), seq(&[-1, -1, 1])),
            Err(PairError::UnequalOneCounts { s: 2, t: 1 })
        );
        assert_eq!(
            SeqPair::new(seq(&[1, -1]), seq(&[-1, 1])),
            Err(PairError::TooShort(2))
        );
        assert_eq!(
            SeqPair::new(seq(&[1, -1, 1]), seq(&[-1, 1])),
            Err(PairError::LengthMismatch { s: 3, t: 2 })
        );
    }

    #[test]
    fn canonical_form_is_idempotent_and_orbit_constant() {
        let pair = SeqPair::parse("+---+", "-++--").unwrap();
        let canon = pair.canonical_form();
        assert_eq!(canon.canonical_form(), canon);
        assert_eq!(pair.swapped().canonical_form(), canon);
        assert_eq!(pair.flipped().canonical_form(), canon);
        assert_eq!(pair.flipped().swapped().canonical_form(), canon);
    }

    #[test]
    fn enumeration_contains_the_paper_pair_class() {
        let listing = enumerate_pairs(5).unwrap();
        let canon = SeqPair::parse("+---+", "-++--").unwrap().canonical_form();
        assert!(listing.pairs.contains(&canon));
        assert_eq!(listing.degenerate, 0);
        for pair in &listing.pairs {
            assert!(pair.is_canonical());
            assert_eq!(pair.s().ones(), pair.t().ones());
            assert_ne!(pair.s().entries(), pair.t().entries());
        }
    }

    #[test]
    fn enumeration_bounds() {
        assert_eq!(enumerate_pairs(2), Err(PairError::TooShort(2)));
        assert_eq!(
            enumerate_pairs(13),
            Err(PairError::LimitExceeded { n: 13, max: MAX_ENUMERATION_LEN })
        );
    }

    #[test]
    fn orbit_size_halves_for_self_reflective_pairs() {
        // t = -s: the SWAP∘FLIP image coincides with the pair itself.
        let pair = SeqPair::parse("+-+-", "-+-+").unwrap();
        assert_eq!(pair.orbit_size(), 2);
        let pair = SeqPair::parse("+---+", "-++--").unwrap();
        assert_eq!(pair.orbit_size(), 4);
    }
}
