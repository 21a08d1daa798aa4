#pragma once

#include "polyrellich/csv.hpp"
#include "polyrellich/errors.hpp"
#include "polyrellich/forms.hpp"
#include "polyrellich/pseudodistance.hpp"
#include "polyrellich/region.hpp"
#include "polyrellich/region_io.hpp"
#include "polyrellich/sampling.hpp"
#include "polyrellich/spectral.hpp"
#include "polyrellich/spherequad.hpp"
#include "polyrellich/tracebounds.hpp"
#include "polyrellich/whitney.hpp"
