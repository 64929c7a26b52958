#pragma once

#include "ppht/construct.hpp"
#include "ppht/decide.hpp"
#include "ppht/errors.hpp"
#include "ppht/matrix.hpp"
#include "ppht/oracle.hpp"
#include "ppht/ordering.hpp"
#include "ppht/phylogeny.hpp"
#include "ppht/resolution.hpp"
