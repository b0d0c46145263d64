#pragma once

#include "monoidlab/bijection.hpp"
#include "monoidlab/cli.hpp"
#include "monoidlab/errors.hpp"
#include "monoidlab/growth.hpp"
#include "monoidlab/io.hpp"
#include "monoidlab/natural.hpp"
#include "monoidlab/opspec.hpp"
#include "monoidlab/search.hpp"
#include "monoidlab/table.hpp"
#include "monoidlab/transform.hpp"
#include "monoidlab/verify.hpp"
