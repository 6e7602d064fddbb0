#pragma once

// Everything except the HTTP glue (decide/http.hpp).

#include "decide/config.hpp"
#include "decide/corpus.hpp"
#include "decide/error.hpp"
#include "decide/hash.hpp"
#include "decide/ingestion.hpp"
#include "decide/layout.hpp"
#include "decide/petition.hpp"
#include "decide/ranking.hpp"
#include "decide/report.hpp"
#include "decide/service.hpp"
#include "decide/stc.hpp"
#include "decide/stemmer.hpp"
#include "decide/stopwords.hpp"
#include "decide/suffix_tree.hpp"
#include "decide/text_pipeline.hpp"
#include "decide/unicode.hpp"
