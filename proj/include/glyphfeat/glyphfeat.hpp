#pragma once

#include "glyphfeat/binarize.hpp"
#include "glyphfeat/components.hpp"
#include "glyphfeat/contour.hpp"
#include "glyphfeat/emdc.hpp"
#include "glyphfeat/error.hpp"
#include "glyphfeat/fourier.hpp"
#include "glyphfeat/gabor.hpp"
#include "glyphfeat/hough.hpp"
#include "glyphfeat/pnm.hpp"
#include "glyphfeat/raster.hpp"
#include "glyphfeat/text_lines.hpp"
#include "glyphfeat/wavelet.hpp"
