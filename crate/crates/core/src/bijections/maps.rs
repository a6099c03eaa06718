use std::sync::OnceLock;

use super::decompose::{on_word, prime_slice, LRDecomposition, TopDecomposition};
use crate::error::{Error, Result};
use crate::patterns::{avoids, has_role_occurrence, Permutation, VincularPattern, Word};

fn pattern(cell: &'static OnceLock<VincularPattern>, text: &str) -> &'static VincularPattern {
    cell.get_or_init(|| text.parse().expect("valid pattern literal"))
}

macro_rules! patterns {
    ($($name:ident = $text:literal;)*) => {
        $(pub(crate) fn $name() -> &'static VincularPattern {
            static CELL: OnceLock<VincularPattern> = OnceLock::new();
            pattern(&CELL, $text)
        })*
    };
}

patterns! {
    p1_42_3 = "1-42-3";
    p1_24_3 = "1-24-3";
    p13_4_2 = "13-4-2";
    p31_4_2 = "31-4-2";
    p31_2_4 = "31-2-4";
    p13_2_4 = "13-2-4";
    p41_2_3 = "41-2-3";
    p14_2_3 = "14-2-3";
}

fn require_avoids(pi: &Permutation, p: &VincularPattern) -> Result<()> {
    if avoids(pi, p) {
        Ok(())
    } else {
        Err(Error::domain(format!("{pi} contains {p}")))
    }
}

/// Bijection `S_n(1-42-3) → S_n(1-24-3)` keeping the positions and values of
/// the left-to-right minima.
pub fn map_1423_to_1243(pi: &Permutation) -> Result<Permutation> {
    require_avoids(pi, p1_42_3())?;
    Ok(Permutation::from_vec_unchecked(lr_star(pi.letters())))
}

fn lr_star(l: &[u8]) -> Vec<u8> {
    let d = LRDecomposition::of_slice(l);
    let t = d.minima.len();
    let mut out = Vec::with_capacity(l.len());
    let mut start = 0;
    for j in 0..t {
        let (m, alpha) = (d.minima[j], &d.segments[j]);
        out.push(m);
        let next_min_at = start + 1 + alpha.len();
        start = next_min_at;
        if j + 1 == t {
            out.extend(prime_slice(alpha));
            break;
        }
        let mut s: Vec<u8> = l[next_min_at..].iter().copied().filter(|&x| x > m).collect();
        s.sort_unstable();
        let mut bounds = vec![0u8];
        bounds.extend(s);
        bounds.push(u8::MAX);
        for b in bounds.windows(2).rev() {
            let band: Vec<u8> = alpha.iter().copied().filter(|&x| b[0] < x && x < b[1]).collect();
            out.extend(prime_slice(&band));
        }
    }
    out
}

/// Bijection `S_n(13-4-2) → S_n(31-4-2)` keeping the last letter.
pub fn map_1342_to_3142(pi: &Permutation) -> Result<Permutation> {
    require_avoids(pi, p13_4_2())?;
    Ok(Permutation::from_vec_unchecked(top_swap(pi.letters())))
}

fn top_swap(l: &[u8]) -> Vec<u8> {
    if l.len() <= 3 {
        return l.to_vec();
    }
    let d = TopDecomposition::of_slice(l).expect("13-4-2 avoiders split into bands");
    let mut out = Vec::with_capacity(l.len());
    for part in d.parts.iter().rev() {
        out.extend(on_word(part, top_swap));
    }
    out.push(d.pivot);
    out.extend(on_word(&d.tail, top_swap));
    out
}

/// Bijection `S_n(31-2-4) → S_n(13-2-4)` built by sliding the letter 1.
pub fn map_3124_to_1324(pi: &Permutation) -> Result<Permutation> {
    require_avoids(pi, p31_2_4())?;
    Ok(Permutation::from_vec_unchecked(slide_map(pi.letters(), p13_2_4())))
}

/// Bijection `S_n(41-2-3) → S_n(14-2-3)`, the same construction for 14-2-3.
pub fn map_4123_to_1423(pi: &Permutation) -> Result<Permutation> {
    require_avoids(pi, p41_2_3())?;
    Ok(Permutation::from_vec_unchecked(slide_map(pi.letters(), p14_2_3())))
}

/// Moves the smallest letter of `w` right, one transposition at a time, until
/// no occurrence of `target` uses it as the pattern's 1. Returns the word and
/// the number of transpositions.
pub fn slide_minimum(w: &Word, target: &VincularPattern) -> Result<(Word, usize)> {
    if w.is_empty() || !w.has_distinct_letters() {
        return Err(Error::domain(format!("{w} is not a nonempty distinct-letter word")));
    }
    let letters: Vec<u8> = w
        .letters()
        .iter()
        .map(|&l| u8::try_from(l).map_err(|_| Error::domain("letters above 255")))
        .collect::<Result<_>>()?;
    let (slid, _, steps) = slide(letters, target);
    Ok((Word::new(slid.into_iter().map(u32::from).collect())?, steps))
}

/// Returns the slid word, the final index of its minimum and the number of
/// transpositions.
fn slide(mut a: Vec<u8>, target: &VincularPattern) -> (Vec<u8>, usize, usize) {
    let mut at = (0..a.len()).min_by_key(|&i| a[i]).expect("nonempty");
    let mut steps = 0;
    while has_role_occurrence(&a, target, 1, at) {
        a.swap(at, at + 1);
        at += 1;
        steps += 1;
    }
    (a, at, steps)
}

fn slide_map(l: &[u8], target: &VincularPattern) -> Vec<u8> {
    let n = l.len();
    if n <= 3 {
        return l.to_vec();
    }
    let min = *l.iter().min().expect("nonempty");
    if l[n - 1] == min {
        let mut out = on_word(&l[..n - 1], |p| slide_map(p, target));
        out.push(min);
        return out;
    }
    let (slid, at, _) = slide(l.to_vec(), target);
    let successor = slid[at + 1];
    let mut rest = slid;
    rest.remove(at);
    let mut out = on_word(&rest, |p| slide_map(p, target));
    let q = out.iter().position(|&x| x == successor).expect("letter kept");
    out.insert(q, min);
    out
}
