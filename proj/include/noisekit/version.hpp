#pragma once

#define NOISEKIT_VERSION "0.1.0"
