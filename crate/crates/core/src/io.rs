//! Image input and output: 8-bit grayscale PGM/PNG scenes, 16-bit PGM
//! label maps, and binary masks written as P5 PGM (0/255).

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use image::codecs::pnm::{PnmEncoder, PnmSubtype, SampleEncoding};
use image::{DynamicImage, ExtendedColorType, ImageEncoder};

use crate::error::{Error, Result};
use crate::raster::BinaryMask;

/// A grayscale or label grid; 8-bit inputs are widened to u16.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayMap {
    pub width: usize,
    pub height: usize,
    pub values: Vec<u16>,
}

impl GrayMap {
    pub fn get(&self, row: usize, col: usize) -> u16 {
        self.values[row * self.width + col]
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u16) -> Self {
        let mut values = Vec::with_capacity(width * height);
        for row in 0..height {
            for col in 0..width {
                values.push(f(row, col));
            }
        }
        GrayMap {
            width,
            height,
            values,
        }
    }
}

/// Reads a grayscale image (PGM or PNG; color inputs are converted to
/// luma). 16-bit samples are preserved.
pub fn read_gray(path: &Path) -> Result<GrayMap> {
    let img = image::open(path)?;
    let (gray, width, height) = match img {
        DynamicImage::ImageLuma16(buf) => {
            let (w, h) = (buf.width() as usize, buf.height() as usize);
            (buf.into_raw(), w, h)
        }
        other => {
            let buf = other.to_luma8();
            let (w, h) = (buf.width() as usize, buf.height() as usize);
            (buf.into_raw().into_iter().map(u16::from).collect(), w, h)
        }
    };
    Ok(GrayMap {
        width,
        height,
        values: gray,
    })
}

/// Writes a mask as binary P5 PGM with values 0 and 255.
pub fn write_mask_pgm(path: &Path, mask: &BinaryMask) -> Result<()> {
    let bytes: Vec<u8> = (0..mask.height())
        .flat_map(|row| (0..mask.width()).map(move |col| (row, col)))
        .map(|(row, col)| if mask.get(row, col) { 255u8 } else { 0u8 })
        .collect();
    let writer = BufWriter::new(File::create(path)?);
    let encoder = PnmEncoder::new(writer).with_subtype(PnmSubtype::Graymap(SampleEncoding::Binary));
    encoder.write_image(
        &bytes,
        mask.width() as u32,
        mask.height() as u32,
        ExtendedColorType::L8,
    )?;
    Ok(())
}

/// Reads a mask written by [`write_mask_pgm`]; any sample above 127 counts
/// as inside.
pub fn read_mask_pgm(path: &Path) -> Result<BinaryMask> {
    let gray = read_gray(path)?;
    if gray.width == 0 || gray.height == 0 {
        return Err(Error::UnsupportedFormat("empty image".into()));
    }
    Ok(BinaryMask::from_fn(gray.width, gray.height, |row, col| {
        gray.get(row, col) > 127
    }))
}
