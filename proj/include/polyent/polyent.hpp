#pragma once

#include <polyent/numeric_policy.hpp>
#include <polyent/linalg.hpp>
#include <polyent/measures.hpp>
#include <polyent/roof_optimizer.hpp>
#include <polyent/roof_oracle.hpp>
#include <polyent/polygamy.hpp>
#include <polyent/states.hpp>
#include <polyent/report_io.hpp>
#include <polyent/sweep.hpp>
#include <polyent/campaign.hpp>
