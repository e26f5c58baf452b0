#pragma once

// Umbrella header: topic-keyword extraction via per-word entropy comparison,
// one-vs-rest linear classification over the selected vocabulary, and k-fold
// evaluation.

#include "entrokey/classifier.hpp"
#include "entrokey/corpus.hpp"
#include "entrokey/corpus_io.hpp"
#include "entrokey/errors.hpp"
#include "entrokey/evaluation.hpp"
#include "entrokey/feature_selection.hpp"
#include "entrokey/generator.hpp"
#include "entrokey/log.hpp"
#include "entrokey/model_io.hpp"
#include "entrokey/pipeline.hpp"
#include "entrokey/vectorizer.hpp"
