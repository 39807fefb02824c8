//! Parsers for complex numbers and vectors on the command line.
//!
//! A complex number is written `1.5`, `2i`, `0.3-1.2i`; a vector is a comma
//! separated list; a list of vectors separates vectors with `;`.

use hspherical::Complex64;

pub fn complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim().replace(' ', "");
    t.parse::<Complex64>()
        .map_err(|_| format!("cannot parse `{s}` as a complex number"))
}

pub fn complex_vec(s: &str) -> Result<Vec<Complex64>, String> {
    s.split(',').map(complex).collect()
}

pub fn real_vec(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| format!("cannot parse `{x}` as a number"))
        })
        .collect()
}

pub fn real_vecs(s: &str) -> Result<Vec<Vec<f64>>, String> {
    s.split(';').map(real_vec).collect()
}

/// `re,im` as one complex number.
pub fn re_im(s: &str) -> Result<Complex64, String> {
    let v = real_vec(s)?;
    match v.as_slice() {
        [re, im] => Ok(Complex64::new(*re, *im)),
        [re] => Ok(Complex64::new(*re, 0.0)),
        _ => Err(format!("expected `re,im`, got `{s}`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(complex("0.3-1.2i").unwrap(), Complex64::new(0.3, -1.2));
        assert_eq!(complex("2i").unwrap(), Complex64::new(0.0, 2.0));
        assert_eq!(
            complex_vec("1, -1+i").unwrap(),
            vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 1.0)]
        );
        assert_eq!(
            real_vecs("1,2;3,4").unwrap(),
            vec![vec![1.0, 2.0], vec![3.0, 4.0]]
        );
        assert_eq!(re_im("0.5,0.1").unwrap(), Complex64::new(0.5, 0.1));
        assert!(complex("x").is_err());
    }
}
