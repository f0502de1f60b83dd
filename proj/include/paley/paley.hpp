#pragma once

#include "paley/bounds.hpp"
#include "paley/error.hpp"
#include "paley/experiments.hpp"
#include "paley/frame.hpp"
#include "paley/io.hpp"
#include "paley/matrix.hpp"
#include "paley/numtheory.hpp"
#include "paley/random.hpp"
#include "paley/spectra.hpp"
#include "paley/verify.hpp"
