#pragma once

#include "sdft/types.hpp"
#include "sdft/fft.hpp"
#include "sdft/spectral_core.hpp"
#include "sdft/sdft1d.hpp"
#include "sdft/sdft2d.hpp"
#include "sdft/graph_lab.hpp"
#include "sdft/apps.hpp"
#include "sdft/io.hpp"
