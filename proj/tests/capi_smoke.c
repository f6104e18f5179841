/*---------------------------------*-C-*-------------------------------------*
 * Copyright 2026 qrng-lab contributors
 * SPDX-License-Identifier: Apache-2.0
 *---------------------------------------------------------------------------*/
/*! \file tests/capi_smoke.c
 * Exercise the public header from plain C99.
 */
#include <math.h>
#include <stddef.h>
#include <string.h>

#include "qrnglab/qrnglab.h"

#define EXPECT(cond, code) \
    do                     \
    {                      \
        if (!(cond))       \
            return code;   \
    } while (0)

int qrng_c_smoke(void)
{
    qrng_chip_params chip;
    qrng_noise_params noise[2];
    qrng_model* model = NULL;
    qrng_batch* batch = NULL;
    double mu_e[2] = {625.0, 625.0};
    double pmf[1024];
    double symbols[4];
    double total = 0;
    size_t i;
    size_t needed = 0;
    unsigned char bits[64];
    qrng_entropy_result h;
    uint32_t t_frames = 0, num_pixels = 0;

    EXPECT(strlen(qrng_version()) > 0, 1);
    qrng_chip_defaults(&chip);
    EXPECT(chip.adc_bits == 10, 2);
    EXPECT(qrng_noise_reference(1, &noise[0]) == QRNG_OK, 3);
    EXPECT(qrng_noise_reference(2, &noise[1]) == QRNG_OK, 4);
    EXPECT(qrng_noise_reference(9, &noise[1]) == QRNG_ERR_DOMAIN, 5);
    EXPECT(strlen(qrng_last_error()) > 0, 6);

    EXPECT(qrng_adc_pmf(&chip, &noise[0], 625.0, 1e-15, pmf, 1024) == QRNG_OK,
           7);
    for (i = 0; i < 1024; ++i)
        total += pmf[i];
    EXPECT(fabs(total - 1) < 1e-12, 8);
    EXPECT(qrng_symbol_pmf(&chip, pmf, 1024, symbols) == QRNG_OK, 9);
    EXPECT(qrng_adc_pmf(&chip, &noise[0], 625.0, 1e-15, pmf, 10)
               == QRNG_ERR_INVALID_ARGUMENT,
           10);

    EXPECT(qrng_entropy_conditional(&chip, &noise[0], 625.0, NULL, &h)
               == QRNG_OK,
           11);
    EXPECT(h.h_min_per_bit > 0.98 && h.h_min_per_bit < 1.0, 12);

    EXPECT(qrng_model_create(&chip, 2, mu_e, noise, &model) == QRNG_OK, 13);
    EXPECT(qrng_model_num_pixels(model) == 2, 14);
    EXPECT(qrng_sample_frames(model, 100, 7, &batch) == QRNG_OK, 15);
    EXPECT(qrng_batch_info(batch, &t_frames, &num_pixels, NULL, NULL, NULL)
               == QRNG_OK,
           16);
    EXPECT(t_frames == 100 && num_pixels == 2, 17);
    EXPECT(qrng_export_bitstream(batch, &chip, NULL, 0, &needed) == QRNG_OK,
           18);
    EXPECT(needed == 50, 19);
    EXPECT(qrng_export_bitstream(batch, &chip, bits, sizeof bits, &needed)
               == QRNG_OK,
           20);

    qrng_batch_destroy(batch);
    qrng_model_destroy(model);
    qrng_batch_destroy(NULL);
    qrng_model_destroy(NULL);
    return 0;
}
