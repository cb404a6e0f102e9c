#pragma once

#include "rlseg/bitmap.hpp"
#include "rlseg/column_segmenter.hpp"
#include "rlseg/error.hpp"
#include "rlseg/evaluation.hpp"
#include "rlseg/fine_segmenter.hpp"
#include "rlseg/formats.hpp"
#include "rlseg/geometry.hpp"
#include "rlseg/inverted_text.hpp"
#include "rlseg/pipeline.hpp"
#include "rlseg/reference_oracle.hpp"
#include "rlseg/row_segmenter.hpp"
#include "rlseg/run_matrix.hpp"
#include "rlseg/segment_tree.hpp"
#include "rlseg/synth_gen.hpp"
#include "rlseg/vertical_cursor.hpp"
