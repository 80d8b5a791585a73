#pragma once

#include "glyphfeat/bench/config.hpp"
#include "glyphfeat/bench/dataset.hpp"
#include "glyphfeat/bench/experiment.hpp"
#include "glyphfeat/bench/extractors.hpp"
#include "glyphfeat/bench/feature_csv.hpp"
#include "glyphfeat/bench/random.hpp"
#include "glyphfeat/bench/synth.hpp"
#include "glyphfeat/bench/transform.hpp"
