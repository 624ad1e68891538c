#pragma once

#include "goeval/annotate.hpp"
#include "goeval/board.hpp"
#include "goeval/commands.hpp"
#include "goeval/core.hpp"
#include "goeval/corpus.hpp"
#include "goeval/crossval.hpp"
#include "goeval/dataset.hpp"
#include "goeval/error.hpp"
#include "goeval/evaluate.hpp"
#include "goeval/features.hpp"
#include "goeval/geometry.hpp"
#include "goeval/io.hpp"
#include "goeval/matrix.hpp"
#include "goeval/model.hpp"
#include "goeval/network.hpp"
#include "goeval/parallel.hpp"
#include "goeval/pattern.hpp"
#include "goeval/report.hpp"
#include "goeval/rng.hpp"
#include "goeval/scaler.hpp"
#include "goeval/sgf.hpp"
#include "goeval/synth.hpp"
#include "goeval/vocabulary.hpp"
