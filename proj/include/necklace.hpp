#pragma once
// Umbrella header for the necklace alignment library.

#include "necklace/align.hpp"
#include "necklace/counters.hpp"
#include "necklace/dominance.hpp"
#include "necklace/extended_real.hpp"
#include "necklace/fft.hpp"
#include "necklace/io.hpp"
#include "necklace/matmul.hpp"
#include "necklace/medconv.hpp"
#include "necklace/minconv.hpp"
#include "necklace/necklace.hpp"
#include "necklace/parallel.hpp"
#include "necklace/select.hpp"
#include "necklace/xy.hpp"
