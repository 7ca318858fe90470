#pragma once

#include "chunkpunct/chunker.hpp"
#include "chunkpunct/codec.hpp"
#include "chunkpunct/corpus.hpp"
#include "chunkpunct/error.hpp"
#include "chunkpunct/eval.hpp"
#include "chunkpunct/external.hpp"
#include "chunkpunct/labels.hpp"
#include "chunkpunct/merger.hpp"
#include "chunkpunct/models.hpp"
#include "chunkpunct/pipeline.hpp"
