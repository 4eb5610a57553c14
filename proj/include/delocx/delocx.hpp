#pragma once

// Umbrella header.

#include "delocx/assembly.hpp"
#include "delocx/corpus.hpp"
#include "delocx/dnc.hpp"
#include "delocx/io.hpp"
#include "delocx/pairing.hpp"
