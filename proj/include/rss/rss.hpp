#pragma once

#include "rss/boundary_form.hpp"
#include "rss/core.hpp"
#include "rss/deficiency.hpp"
#include "rss/dl_operator.hpp"
#include "rss/finite_difference.hpp"
#include "rss/parallel.hpp"
#include "rss/quadrature.hpp"
#include "rss/resolvent.hpp"
#include "rss/spectrum.hpp"
#include "rss/transform.hpp"
