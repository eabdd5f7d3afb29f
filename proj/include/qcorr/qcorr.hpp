#pragma once

#include "qcorr/qmat.hpp"
#include "qcorr/states.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/search.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/ncmqc.hpp"
#include "qcorr/decoherence.hpp"
#include "qcorr/io.hpp"
