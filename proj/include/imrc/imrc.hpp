#ifndef IMRC_IMRC_HPP
#define IMRC_IMRC_HPP

#include "imrc/beamforming.hpp"
#include "imrc/config.hpp"
#include "imrc/error.hpp"
#include "imrc/figures.hpp"
#include "imrc/hull.hpp"
#include "imrc/lowpower.hpp"
#include "imrc/model.hpp"
#include "imrc/rates.hpp"
#include "imrc/search.hpp"

#endif  // IMRC_IMRC_HPP
