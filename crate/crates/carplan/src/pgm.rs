//! A small, strict PGM (portable graymap) reader and writer.
//!
//! Supports the plain (`P2`) and binary (`P5`) variants with maxval up to
//! 65535, comments in headers, and nothing else. Parsing is bit-exact per the
//! format description: magic number, whitespace-separated width, height and
//! maxval (with `#` comments), then the raster — ASCII integers for `P2`, or
//! one byte per sample (two big-endian bytes when maxval exceeds 255) for
//! `P5`, separated from the header by exactly one whitespace byte.

use thiserror::Error;

/// A decoded grayscale image. Pixels are row-major with row 0 at the top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pgm {
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    pub pixels: Vec<u16>,
}

/// Why a byte stream is not a usable PGM.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PgmError {
    #[error("unsupported magic number (only P2 and P5 are supported)")]
    UnsupportedMagic,
    #[error("malformed header: {0}")]
    MalformedHeader(&'static str),
    #[error("maxval {0} out of range (1..=65535)")]
    MaxvalOutOfRange(u32),
    #[error("truncated raster: expected {expected} samples, found {found}")]
    TruncatedRaster { expected: usize, found: usize },
    #[error("pixel value {value} exceeds maxval {maxval}")]
    PixelOutOfRange { value: u32, maxval: u16 },
}

struct Tokenizer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Tokenizer<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        Self { bytes, pos: 0 }
    }

    /// Skip whitespace and `#` comments (which run to end of line).
    fn skip_filler(&mut self) {
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    /// Read one unsigned decimal integer token.
    fn next_uint(&mut self) -> Result<u32, PgmError> {
        self.skip_filler();
        let begin = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == begin {
            return Err(PgmError::MalformedHeader("expected an unsigned integer"));
        }
        let mut value: u32 = 0;
        for &b in &self.bytes[begin..self.pos] {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u32::from(b - b'0')))
                .ok_or(PgmError::MalformedHeader("integer overflows 32 bits"))?;
        }
        Ok(value)
    }
}

/// Parse a PGM byte stream.
pub fn parse(bytes: &[u8]) -> Result<Pgm, PgmError> {
    if bytes.len() < 2 {
        return Err(PgmError::UnsupportedMagic);
    }
    let binary = match &bytes[..2] {
        b"P2" => false,
        b"P5" => true,
        _ => return Err(PgmError::UnsupportedMagic),
    };
    let mut tok = Tokenizer::new(&bytes[2..]);
    let width = tok.next_uint()? as usize;
    let height = tok.next_uint()? as usize;
    if width == 0 || height == 0 {
        return Err(PgmError::MalformedHeader("zero image dimension"));
    }
    let maxval_raw = tok.next_uint()?;
    if maxval_raw == 0 || maxval_raw > 65535 {
        return Err(PgmError::MaxvalOutOfRange(maxval_raw));
    }
    let maxval = maxval_raw as u16;
    let expected = width * height;
    let mut pixels = Vec::with_capacity(expected);

    if binary {
        // Exactly one whitespace byte separates the header from the raster.
        let mut pos = 2 + tok.pos;
        match bytes.get(pos) {
            Some(b) if b.is_ascii_whitespace() => pos += 1,
            _ => {
                return Err(PgmError::MalformedHeader(
                    "missing whitespace before binary raster",
                ))
            }
        }
        let wide = maxval > 255;
        let sample_len = if wide { 2 } else { 1 };
        let raster = &bytes[pos.min(bytes.len())..];
        if raster.len() < expected * sample_len {
            return Err(PgmError::TruncatedRaster {
                expected,
                found: raster.len() / sample_len,
            });
        }
        for i in 0..expected {
            let value = if wide {
                u16::from_be_bytes([raster[2 * i], raster[2 * i + 1]])
            } else {
                u16::from(raster[i])
            };
            if value > maxval {
                return Err(PgmError::PixelOutOfRange {
                    value: u32::from(value),
                    maxval,
                });
            }
            pixels.push(value);
        }
    } else {
        for found in 0..expected {
            tok.skip_filler();
            if tok.pos >= tok.bytes.len() {
                return Err(PgmError::TruncatedRaster { expected, found });
            }
            let value = tok.next_uint()?;
            if value > u32::from(maxval) {
                return Err(PgmError::PixelOutOfRange {
                    value,
                    maxval,
                });
            }
            pixels.push(value as u16);
        }
    }
    Ok(Pgm {
        width,
        height,
        maxval,
        pixels,
    })
}

impl Pgm {
    /// Encode as binary (`P5`) PGM bytes.
    pub fn encode(&self) -> Vec<u8> {
        assert_eq!(
            self.pixels.len(),
            self.width * self.height,
            "pixel count mismatch"
        );
        let mut out = format!("P5\n{} {}\n{}\n", self.width, self.height, self.maxval)
            .into_bytes();
        if self.maxval > 255 {
            for &p in &self.pixels {
                out.extend_from_slice(&p.to_be_bytes());
            }
        } else {
            out.extend(self.pixels.iter().map(|&p| p as u8));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_p2_with_comments() {
        let text = b"P2 # magic\n# a comment line\n3 2\n255\n0 128 255\n1 2 3\n";
        let img = parse(text).unwrap();
        assert_eq!(img.width, 3);
        assert_eq!(img.height, 2);
        assert_eq!(img.maxval, 255);
        assert_eq!(img.pixels, vec![0, 128, 255, 1, 2, 3]);
    }

    #[test]
    fn parses_binary_p5() {
        let mut bytes = b"P5\n2 2\n255\n".to_vec();
        bytes.extend_from_slice(&[10, 20, 30, 40]);
        let img = parse(&bytes).unwrap();
        assert_eq!(img.pixels, vec![10, 20, 30, 40]);
    }

    #[test]
    fn parses_two_byte_samples_above_255() {
        let mut bytes = b"P5\n2 1\n1000\n".to_vec();
        bytes.extend_from_slice(&500u16.to_be_bytes());
        bytes.extend_from_slice(&1000u16.to_be_bytes());
        let img = parse(&bytes).unwrap();
        assert_eq!(img.maxval, 1000);
        assert_eq!(img.pixels, vec![500, 1000]);
    }

    #[test]
    fn rejects_wrong_magic() {
        assert_eq!(parse(b"P6\n1 1\n255\n\x00"), Err(PgmError::UnsupportedMagic));
        assert_eq!(parse(b"x"), Err(PgmError::UnsupportedMagic));
    }

    #[test]
    fn rejects_bad_headers() {
        assert!(matches!(
            parse(b"P2\nabc\n"),
            Err(PgmError::MalformedHeader(_))
        ));
        assert!(matches!(
            parse(b"P2\n0 4\n255\n"),
            Err(PgmError::MalformedHeader(_))
        ));
        assert_eq!(parse(b"P2\n2 2\n0\n0 0 0 0"), Err(PgmError::MaxvalOutOfRange(0)));
        assert_eq!(
            parse(b"P2\n2 2\n70000\n0 0 0 0"),
            Err(PgmError::MaxvalOutOfRange(70000))
        );
    }

    #[test]
    fn rejects_truncated_rasters() {
        assert_eq!(
            parse(b"P2\n2 2\n255\n1 2 3"),
            Err(PgmError::TruncatedRaster {
                expected: 4,
                found: 3
            })
        );
        let bytes = b"P5\n2 2\n255\n\x01\x02".to_vec();
        assert!(matches!(
            parse(&bytes),
            Err(PgmError::TruncatedRaster { expected: 4, .. })
        ));
    }

    #[test]
    fn rejects_pixels_over_maxval() {
        assert_eq!(
            parse(b"P2\n2 1\n10\n5 11\n"),
            Err(PgmError::PixelOutOfRange {
                value: 11,
                maxval: 10
            })
        );
    }

    #[test]
    fn round_trips_through_encode() {
        let img = Pgm {
            width: 3,
            height: 2,
            maxval: 255,
            pixels: vec![0, 255, 7, 9, 200, 31],
        };
        assert_eq!(parse(&img.encode()).unwrap(), img);

        let wide = Pgm {
            width: 2,
            height: 1,
            maxval: 4095,
            pixels: vec![4095, 17],
        };
        assert_eq!(parse(&wide.encode()).unwrap(), wide);
    }
}
